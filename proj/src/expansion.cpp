#include "chermite/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chermite/errors.hpp"

namespace chermite {

namespace {

bool is_zero(const Rational &v) { return sgn(v) == 0; }
bool is_zero(const Complex &v) { return v == Complex(0.0); }

std::string describe(const TensorIndex &i) {
  return "(" + std::to_string(i.m) + "," + std::to_string(i.n) + "," +
         std::to_string(i.p) + ")";
}

Json index_json(const TensorIndex &i) {
  return Json{{"m", i.m}, {"n", i.n}, {"p", i.p}};
}

bool relation_holds(const Rational &lhs, const Rational &rhs) { return lhs == rhs; }

bool relation_holds(const Complex &lhs, const Complex &rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return std::abs(lhs - rhs) <= std::max(1e-12 * scale, 1e-15);
}

Json scalar_json(const Rational &v) { return format_rational(v); }
Json scalar_json(const Complex &v) { return complex_to_json(v); }

Complex scalar_complex(const Rational &v) { return v.get_d(); }
Complex scalar_complex(const Complex &v) { return v; }

template <class S> S from_integer(const Integer &v) {
  if constexpr (std::is_same_v<S, Rational>)
    return Rational(v);
  else
    return Complex(v.get_d());
}

template <class S> VerificationReport pde_check_impl(const CoeffTensor<S> &t) {
  const std::uint32_t D = t.max_degree();
  std::uint64_t checked = 0, skipped = 0;
  std::optional<TensorIndex> first;
  SparsePoly residual(3);
  Json complex_residuals = Json::array();

  for (std::uint32_t m = 0; m <= D; ++m) {
    for (std::uint32_t n = 0; m + n <= D; ++n) {
      for (std::uint32_t p = 1; m + n + 2 * p <= D; ++p) {
        const TensorIndex here{m, n, p};
        const TensorIndex there{m + 1, n + 1, p - 1};
        if (!t.within(here) || !t.within(there)) {
          ++skipped;
          continue;
        }
        ++checked;
        const S lhs = t.get(here) * S(p);
        const S rhs = t.get(there) * from_integer<S>(Integer(m + 1) * (n + 1));
        if (relation_holds(lhs, rhs))
          continue;
        if (!first)
          first = here;
        if constexpr (std::is_same_v<S, Rational>) {
          residual.add_term({m, n, p - 1}, lhs - rhs);
        } else {
          complex_residuals.push_back(Json{{"m", m}, {"n", n}, {"p", p},
                                           {"lhs", complex_to_json(lhs)},
                                           {"rhs", complex_to_json(rhs)}});
        }
      }
    }
  }

  VerificationReport r;
  r.identity = "pde";
  r.params = Json{{"max_degree", D}, {"checked", checked}, {"skipped", skipped}};
  r.passed = !first.has_value();
  if (first) {
    r.params["first_violation"] = index_json(*first);
    if constexpr (std::is_same_v<S, Rational>)
      r.witness = poly_to_json(residual);
    else
      r.witness = complex_residuals;
  }
  return r;
}

template <class S> HermiteExpansion<S> hermite_expand_impl(const CoeffTensor<S> &t) {
  const VerificationReport check = pde_check(t);
  if (!check.passed) {
    const auto &v = check.params.at("first_violation");
    throw NotHermiteExpandable(
        "coefficients violate p*l[m,n,p] = (m+1)(n+1)*l[m+1,n+1,p-1] at " +
        describe({v.at("m").get<std::uint32_t>(), v.at("n").get<std::uint32_t>(),
                  v.at("p").get<std::uint32_t>()}));
  }
  HermiteExpansion<S> e;
  e.max_degree = t.max_degree();
  for (const auto &[i, c] : t.entries())
    if (i.p == 0)
      e.coeffs.emplace(HermiteIndex{i.m, i.n}, c);
  return e;
}

template <class S> CoeffTensor<S> expansion_tensor_impl(const HermiteExpansion<S> &e) {
  CoeffTensor<S> t(e.max_degree);
  for (const auto &[idx, c] : e.coeffs) {
    for (std::uint32_t p = 0; p <= idx.min(); ++p) {
      const std::uint32_t m = idx.m - p, n = idx.n - p;
      const Integer w =
          factorial(idx.m) * factorial(idx.n) / (factorial(m) * factorial(n) * factorial(p));
      t.set({m, n, p}, c * from_integer<S>(w));
    }
  }
  return t;
}

template <class S>
Complex reconstruct_eval_impl(const HermiteExpansion<S> &e, Complex x, Complex y,
                              Complex z) {
  require_finite(x, "reconstruct_eval x");
  require_finite(y, "reconstruct_eval y");
  require_finite(z, "reconstruct_eval z");
  std::uint32_t top = 0;
  for (const auto &[idx, c] : e.coeffs)
    top = std::max(top, idx.m + idx.n);
  std::vector<Complex> blocks(top + 1, 0.0);
  for (const auto &[idx, c] : e.coeffs)
    blocks[idx.m + idx.n] += scalar_complex(c) * hermite_eval(idx, x, y, z);
  Complex sum = 0.0;
  for (const auto &b : blocks)
    sum += b;
  require_finite(sum, "reconstruct_eval");
  return sum;
}

template <class S> Json tensor_to_json_impl(const CoeffTensor<S> &t) {
  Json entries = Json::array();
  for (const auto &[i, c] : t.entries())
    entries.push_back(Json{{"m", i.m}, {"n", i.n}, {"p", i.p}, {"coeff", scalar_json(c)}});
  return Json{{"max_degree", t.max_degree()}, {"entries", entries}};
}

template <class S> Json expansion_to_json_impl(const HermiteExpansion<S> &e) {
  Json coeffs = Json::array();
  for (const auto &[idx, c] : e.coeffs)
    coeffs.push_back(Json{{"m", idx.m}, {"n", idx.n}, {"coeff", scalar_json(c)}});
  return Json{{"max_degree", e.max_degree}, {"coeffs", coeffs}};
}

std::uint32_t read_index(const Json &entry, const char *key) {
  if (!entry.contains(key) || !entry.at(key).is_number_unsigned())
    throw ParseError(std::string("tensor entry needs a non-negative integer \"") +
                     key + "\"");
  return entry.at(key).get<std::uint32_t>();
}

} // namespace

template <class S> void CoeffTensor<S>::set(const TensorIndex &i, const S &value) {
  if (!within(i))
    throw ArityError("tensor index " + describe(i) + " exceeds max degree " +
                     std::to_string(max_degree_));
  if (is_zero(value))
    entries_.erase(i);
  else
    entries_[i] = value;
}

template <class S> S CoeffTensor<S>::get(const TensorIndex &i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? S(0) : it->second;
}

template <class S> CoeffTensor<S> &CoeffTensor<S>::operator+=(const CoeffTensor &other) {
  if (other.max_degree_ != max_degree_)
    throw ArityError("tensor max degrees differ");
  for (const auto &[i, c] : other.entries_)
    set(i, get(i) + c);
  return *this;
}

template <class S> CoeffTensor<S> &CoeffTensor<S>::operator*=(const S &c) {
  if (is_zero(c)) {
    entries_.clear();
    return *this;
  }
  for (auto &[i, v] : entries_)
    v *= c;
  return *this;
}

template class CoeffTensor<Rational>;
template class CoeffTensor<Complex>;

VerificationReport pde_check(const RationalTensor &t) { return pde_check_impl(t); }
VerificationReport pde_check(const ComplexTensor &t) { return pde_check_impl(t); }

RationalExpansion hermite_expand(const RationalTensor &t) { return hermite_expand_impl(t); }
ComplexExpansion hermite_expand(const ComplexTensor &t) { return hermite_expand_impl(t); }

RationalTensor expansion_tensor(const RationalExpansion &e) {
  return expansion_tensor_impl(e);
}
ComplexTensor expansion_tensor(const ComplexExpansion &e) {
  return expansion_tensor_impl(e);
}

Complex reconstruct_eval(const RationalExpansion &e, Complex x, Complex y, Complex z) {
  return reconstruct_eval_impl(e, x, y, z);
}
Complex reconstruct_eval(const ComplexExpansion &e, Complex x, Complex y, Complex z) {
  return reconstruct_eval_impl(e, x, y, z);
}

SparsePoly reconstruct_poly(const RationalExpansion &e) {
  SparsePoly r(3);
  for (const auto &[idx, c] : e.coeffs)
    r += hermite_poly(idx) * c;
  return r;
}

RationalTensor tensor_from_poly(const SparsePoly &p, std::uint32_t max_degree) {
  if (p.arity() != 3)
    throw ArityError("tensor_from_poly expects a polynomial in (x, y, z)");
  RationalTensor t(max_degree);
  for (const auto &[e, c] : p.terms())
    t.set({e[X], e[Y], e[Z]}, c);
  return t;
}

ComplexTensor to_complex(const RationalTensor &t) {
  ComplexTensor out(t.max_degree());
  for (const auto &[i, c] : t.entries())
    out.set(i, c.get_d());
  return out;
}

AnyTensor tensor_from_json(const Json &j) {
  if (!j.is_object() || !j.contains("max_degree") || !j.contains("entries"))
    throw ParseError("tensor JSON needs \"max_degree\" and \"entries\"");
  if (!j.at("max_degree").is_number_unsigned())
    throw ParseError("\"max_degree\" must be a non-negative integer");
  if (!j.at("entries").is_array())
    throw ParseError("\"entries\" must be an array");
  const auto D = j.at("max_degree").get<std::uint32_t>();
  const Json &entries = j.at("entries");

  bool all_rational = true;
  for (const auto &e : entries) {
    if (!e.is_object() || !e.contains("coeff"))
      throw ParseError("tensor entry needs \"coeff\"");
    all_rational = all_rational && e.at("coeff").is_string() &&
                   e.at("coeff").get<std::string>().find('i') == std::string::npos;
  }

  auto fill = [&](auto &tensor, auto &&read) {
    for (const auto &e : entries) {
      const TensorIndex i{read_index(e, "m"), read_index(e, "n"), read_index(e, "p")};
      if (!tensor.within(i))
        throw ParseError("tensor entry " + describe(i) + " exceeds max_degree " +
                         std::to_string(D));
      tensor.set(i, tensor.get(i) + read(e.at("coeff")));
    }
  };

  if (all_rational) {
    RationalTensor t(D);
    fill(t, [](const Json &c) { return parse_rational(c.get<std::string>()); });
    return t;
  }
  ComplexTensor t(D);
  fill(t, [](const Json &c) {
    if (c.is_string()) {
      const auto s = c.get<std::string>();
      if (s.find('/') != std::string::npos)
        return Complex(parse_rational(s).get_d());
    }
    return complex_from_json(c);
  });
  return t;
}

Json tensor_to_json(const RationalTensor &t) { return tensor_to_json_impl(t); }
Json tensor_to_json(const ComplexTensor &t) { return tensor_to_json_impl(t); }
Json expansion_to_json(const RationalExpansion &e) { return expansion_to_json_impl(e); }
Json expansion_to_json(const ComplexExpansion &e) { return expansion_to_json_impl(e); }

} // namespace chermite
