#include "chermite/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "chermite/errors.hpp"
#include "chermite/expansion.hpp"
#include "chermite/hermite.hpp"
#include "chermite/identities.hpp"
#include "chermite/kernels.hpp"
#include "chermite/poly_json.hpp"

namespace chermite::cli {

namespace {

enum class Format { Json, Csv, Pretty };

struct Config {
  Format format = Format::Json;
  std::uint64_t seed = 20190606;

  // eval / coeffs
  std::uint32_t m = 0, n = 0;
  std::string x = "0", y = "0", z = "0";

  // verify
  std::string identity;
  std::optional<std::uint32_t> max_degree;
  std::uint32_t k = 3;

  // kernel
  std::string kernel;
  std::string params_path;
  std::optional<double> tol;
  std::optional<std::uint32_t> max_order;

  // expand
  std::string input_path;
};

const std::map<std::string, Format> kFormats{
    {"json", Format::Json}, {"csv", Format::Csv}, {"pretty", Format::Pretty}};

const std::vector<std::string> kIdentities{
    "pde",      "nielsen-lin", "nielsen-prod", "addition", "fourvar",
    "inversion", "scaling",    "operator",     "duality"};

const std::vector<std::string> kKernels{"genfn",         "mehler",
                                        "multilinear",   "mixed",
                                        "mixed-shifted", "classical-mehler",
                                        "weisner"};

std::string csv_quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Complex complex_arg(const std::string &text) {
  if (!text.empty() && text.front() == '{')
    return complex_from_json(Json::parse(text));
  return parse_complex(text);
}

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  return Json::parse(in);
}

// --- eval / coeffs -----------------------------------------------------------

int cmd_eval(const Config &cfg, std::ostream &out) {
  const Complex v = hermite_eval({cfg.m, cfg.n}, complex_arg(cfg.x),
                                 complex_arg(cfg.y), complex_arg(cfg.z));
  switch (cfg.format) {
  case Format::Json:
    out << Json{{"value", complex_to_json(v)}}.dump() << '\n';
    break;
  case Format::Csv:
    out << "re,im\n" << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    break;
  case Format::Pretty:
    out << "H_{" << cfg.m << ',' << cfg.n << "}(" << cfg.x << ", " << cfg.y << ", "
        << cfg.z << ") = " << format_double(v.real())
        << (v.imag() < 0 ? " - " : " + ") << format_double(std::abs(v.imag()))
        << "i\n";
    break;
  }
  return kOk;
}

int cmd_coeffs(const Config &cfg, std::ostream &out) {
  const SparsePoly p = hermite_poly({cfg.m, cfg.n});
  switch (cfg.format) {
  case Format::Json:
    out << poly_to_json(p).dump() << '\n';
    break;
  case Format::Csv:
    out << "x,y,z,coeff\n";
    for (const auto &[e, c] : p.terms())
      out << e[X] << ',' << e[Y] << ',' << e[Z] << ',' << format_rational(c) << '\n';
    break;
  case Format::Pretty: {
    const std::string names[] = {"x", "y", "z"};
    out << "H_{" << cfg.m << ',' << cfg.n << "}(x, y, z) = " << p.to_string(names)
        << '\n';
    break;
  }
  }
  return kOk;
}

// --- verify ------------------------------------------------------------------

std::vector<Rational> random_rationals(std::mt19937_64 &rng, std::size_t k) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<Rational> v(k);
  for (auto &r : v) {
    r = Rational(num(rng), den(rng));
    r.canonicalize();
  }
  return v;
}

void emit_report(const VerificationReport &r, Format format, std::ostream &out) {
  switch (format) {
  case Format::Json:
    out << r.to_json().dump() << '\n';
    break;
  case Format::Csv:
    out << r.identity << ',' << (r.passed ? "pass" : "fail") << ','
        << csv_quote(r.params.dump()) << '\n';
    break;
  case Format::Pretty:
    out << (r.passed ? "[pass] " : "[FAIL] ") << r.identity << ' ' << r.params.dump()
        << '\n';
    break;
  }
}

int cmd_verify(const Config &cfg, std::ostream &out) {
  const auto &id = cfg.identity;
  auto bound = [&](std::uint32_t dflt) { return cfg.max_degree.value_or(dflt); };
  bool all_pass = true;
  if (cfg.format == Format::Csv)
    out << "identity,status,params\n";
  auto emit = [&](const VerificationReport &r) {
    all_pass = all_pass && r.passed;
    emit_report(r, cfg.format, out);
  };
  auto for_each_pair = [&](std::uint32_t D, auto &&f) {
    for (std::uint32_t m = 0; m <= D; ++m)
      for (std::uint32_t n = 0; n <= D; ++n)
        f(HermiteIndex{m, n});
  };
  auto for_each_quad = [&](std::uint32_t D, auto &&f) {
    for (std::uint32_t total = 0; total <= D; ++total) {
      Compositions c(total, 4);
      do {
        const auto &e = c.current();
        f(e[0], e[1], e[2], e[3]);
      } while (c.advance());
    }
  };

  if (id == "pde") {
    for_each_pair(bound(12), [&](HermiteIndex i) { emit(verify_pde(i)); });
  } else if (id == "operator") {
    for_each_pair(bound(12), [&](HermiteIndex i) { emit(verify_operator(i)); });
  } else if (id == "inversion") {
    for_each_pair(bound(10), [&](HermiteIndex i) { emit(verify_inversion(i)); });
  } else if (id == "scaling") {
    std::uint64_t salt = 0;
    for_each_pair(bound(6), [&](HermiteIndex i) {
      emit(verify_scaling(i, cfg.seed + salt++));
    });
  } else if (id == "nielsen-lin") {
    for_each_quad(bound(8), [&](auto m1, auto n1, auto m2, auto n2) {
      emit(verify_nielsen_linearization(m1, n1, m2, n2));
    });
  } else if (id == "nielsen-prod") {
    for_each_quad(bound(8), [&](auto m1, auto n1, auto m2, auto n2) {
      emit(verify_nielsen_product(m1, n1, m2, n2));
    });
  } else if (id == "duality") {
    for_each_quad(bound(8), [&](auto m1, auto n1, auto m2, auto n2) {
      emit(verify_nielsen_duality(m1, n1, m2, n2));
    });
  } else if (id == "addition") {
    std::mt19937_64 rng(cfg.seed);
    const std::uint32_t D = bound(3);
    for (std::uint32_t k = 1; k <= cfg.k; ++k)
      for (std::uint32_t M = 0; M <= D; ++M)
        for (std::uint32_t N = 0; N <= D; ++N)
          for (int trial = 0; trial < 10; ++trial) {
            const auto a = random_rationals(rng, k);
            const auto b = random_rationals(rng, k);
            emit(verify_addition(M, N, a, b, rng()));
          }
  } else if (id == "fourvar") {
    emit(verify_fourvar_genfn(bound(6)));
  } else {
    throw ParseError("unknown identity '" + id + "'");
  }
  return all_pass ? kOk : kIdentityFailure;
}

// --- kernel ------------------------------------------------------------------

Complex param(const Json &j, const char *key) {
  if (!j.contains(key))
    throw ParseError(std::string("kernel parameters missing \"") + key + "\"");
  return complex_from_json(j.at(key));
}

std::vector<Complex> param_list(const Json &j, const char *key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw ParseError(std::string("kernel parameters need an array \"") + key + "\"");
  std::vector<Complex> v;
  for (const auto &e : j.at(key))
    v.push_back(complex_from_json(e));
  return v;
}

std::uint32_t param_k(const Json &j) {
  if (!j.contains("k") || !j.at("k").is_number_unsigned())
    throw ParseError("kernel parameters need a non-negative integer \"k\"");
  return j.at("k").get<std::uint32_t>();
}

std::uint32_t env_order_cap() {
  const char *raw = std::getenv("HERMITE_MAX_ORDER");
  if (raw == nullptr || *raw == '\0')
    return UINT32_MAX;
  char *end = nullptr;
  const unsigned long v = std::strtoul(raw, &end, 10);
  if (*end != '\0' || v == 0)
    throw ParseError("HERMITE_MAX_ORDER must be a positive integer");
  return static_cast<std::uint32_t>(std::min<unsigned long>(v, UINT32_MAX));
}

int cmd_kernel(const Config &cfg, std::ostream &out) {
  const Json j = read_json_file(cfg.params_path);
  if (!j.is_object())
    throw ParseError("kernel parameter file must hold a JSON object");

  SeriesPolicy policy;
  if (cfg.tol) {
    if (!(*cfg.tol > 0.0))
      throw ParseError("--tol must be positive");
    policy.tol = *cfg.tol;
  }
  if (cfg.max_order)
    policy.max_order = *cfg.max_order;
  policy.max_order = std::min(policy.max_order, env_order_cap());
  policy.record_blocks = cfg.format == Format::Csv;

  Json extra = Json::object();
  std::optional<KernelComparison> cmp;
  const auto &kind = cfg.kernel;
  if (kind == "genfn") {
    const GenfnParams p{param(j, "x"), param(j, "y"), param(j, "z"), param(j, "s"),
                        param(j, "t")};
    cmp = compare_kernel(genfn_closed(p), genfn_series(p, policy), policy.tol);
  } else if (kind == "mehler") {
    const MehlerParams p{param(j, "x1"), param(j, "y1"), param(j, "z1"),
                         param(j, "x2"), param(j, "y2"), param(j, "z2"),
                         param(j, "s"),  param(j, "t")};
    cmp = compare_kernel(mehler_closed(p), mehler_series(p, policy), policy.tol);
  } else if (kind == "multilinear") {
    const MultilinearParams p{param(j, "x"),         param(j, "y"),
                              param(j, "z"),         param_list(j, "xs"),
                              param_list(j, "ys"),   param_list(j, "zs"),
                              param_list(j, "ss"),   param_list(j, "ts")};
    const auto dom = multilinear_domain(p);
    extra["domain"] = Json{{"c", complex_to_json(dom.c)},
                           {"abs_cz", dom.cz},
                           {"abs_c_below_one", dom.c_below_one}};
    cmp = compare_kernel(multilinear_closed(p), multilinear_series(p, policy),
                         policy.tol);
  } else if (kind == "mixed" || kind == "mixed-shifted") {
    const MixedParams p{param(j, "x"), param(j, "y"), param(j, "z"), param(j, "u"),
                        param(j, "v"), param(j, "s"), param(j, "t")};
    if (kind == "mixed") {
      cmp = compare_kernel(mixed_kernel_closed(p), mixed_kernel_series(p, policy),
                           policy.tol);
    } else {
      const auto k = param_k(j);
      extra["k"] = k;
      cmp = compare_kernel(mixed_kernel_shifted_closed(k, p),
                           mixed_kernel_shifted_series(k, p, policy), policy.tol);
    }
  } else if (kind == "classical-mehler" || kind == "weisner") {
    const ClassicalParams p{param(j, "u"), param(j, "v"), param(j, "t")};
    if (kind == "classical-mehler") {
      cmp = compare_kernel(classical_mehler_closed(p),
                           classical_mehler_series(p, policy), policy.tol);
    } else {
      const auto k = param_k(j);
      extra["k"] = k;
      cmp = compare_kernel(weisner_closed(k, p), weisner_series(k, p, policy),
                           policy.tol);
    }
  } else {
    throw ParseError("unknown kernel '" + kind + "'");
  }

  const SeriesResult &s = cmp->series;
  switch (cfg.format) {
  case Format::Json: {
    Json doc{{"kernel", kind},
             {"closed", complex_to_json(cmp->closed)},
             {"series", Json{{"value", complex_to_json(s.value)},
                             {"order_used", s.order_used},
                             {"tail_estimate", s.tail_estimate},
                             {"converged", s.converged}}},
             {"abs_diff", cmp->abs_diff},
             {"tol", policy.tol},
             {"max_order", policy.max_order},
             {"within_tol", cmp->agrees}};
    for (auto &[key, value] : extra.items())
      doc[key] = value;
    out << doc.dump() << '\n';
    break;
  }
  case Format::Csv: {
    out << "order,block_re,block_im,partial_re,partial_im\n";
    Complex partial = 0.0;
    for (std::size_t d = 0; d < s.blocks.size(); ++d) {
      partial += s.blocks[d];
      out << d << ',' << format_double(s.blocks[d].real()) << ','
          << format_double(s.blocks[d].imag()) << ',' << format_double(partial.real())
          << ',' << format_double(partial.imag()) << '\n';
    }
    break;
  }
  case Format::Pretty:
    out << kind << ": closed = " << format_double(cmp->closed.real()) << " + "
        << format_double(cmp->closed.imag()) << "i, series = "
        << format_double(s.value.real()) << " + " << format_double(s.value.imag())
        << "i after " << s.order_used << " blocks, |diff| = "
        << format_double(cmp->abs_diff)
        << (cmp->agrees ? " (agrees)" : " (DISAGREES)") << '\n';
    break;
  }
  return cmp->agrees ? kOk : kIdentityFailure;
}

// --- expand ------------------------------------------------------------------

int cmd_expand(const Config &cfg, std::ostream &out) {
  const AnyTensor tensor = tensor_from_json(read_json_file(cfg.input_path));
  const Json doc = std::visit(
      [](const auto &t) { return expansion_to_json(hermite_expand(t)); }, tensor);
  switch (cfg.format) {
  case Format::Json:
    out << doc.dump() << '\n';
    break;
  case Format::Csv:
    out << "m,n,coeff\n";
    for (const auto &c : doc.at("coeffs"))
      out << c.at("m") << ',' << c.at("n") << ','
          << (c.at("coeff").is_string() ? c.at("coeff").get<std::string>()
                                        : csv_quote(c.at("coeff").dump()))
          << '\n';
    break;
  case Format::Pretty:
    for (const auto &c : doc.at("coeffs"))
      out << "H_{" << c.at("m") << ',' << c.at("n") << "} * " << c.at("coeff").dump()
          << '\n';
    break;
  }
  return kOk;
}

void error_json(std::ostream &out, Format format, const char *kind,
                const std::string &message) {
  if (format == Format::Json)
    out << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

} // namespace

int run(std::span<const std::string> args, std::ostream &out, std::ostream &err) {
  Config cfg;
  CLI::App app{"Complex Hermite polynomials: evaluation, identity checks, kernels, "
               "expansions"};
  app.name("chermite");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  app.add_option("--seed", cfg.seed, "Seed for randomized sweeps");

  auto *eval = app.add_subcommand("eval", "Evaluate H_{m,n}(x, y, z)");
  eval->add_option("--m", cfg.m)->required();
  eval->add_option("--n", cfg.n)->required();
  eval->add_option("--x", cfg.x, "complex, e.g. 1, 2-3i, {\"re\":1,\"im\":2}");
  eval->add_option("--y", cfg.y);
  eval->add_option("--z", cfg.z);

  auto *coeffs = app.add_subcommand("coeffs", "Exact coefficients of H_{m,n}");
  coeffs->add_option("--m", cfg.m)->required();
  coeffs->add_option("--n", cfg.n)->required();

  auto *verify = app.add_subcommand("verify", "Run an exact identity sweep");
  verify->add_option("identity", cfg.identity)
      ->required()
      ->check(CLI::IsMember(kIdentities));
  verify->add_option("--max-degree", cfg.max_degree, "Sweep bound");
  verify->add_option("--k", cfg.k, "Largest number of parts (addition)")
      ->check(CLI::Range(1u, 8u));

  auto *kernel = app.add_subcommand("kernel", "Compare a kernel series to its closed form");
  kernel->add_option("kernel", cfg.kernel)->required()->check(CLI::IsMember(kKernels));
  kernel->add_option("--params", cfg.params_path, "JSON parameter file")->required();
  kernel->add_option("--tol", cfg.tol);
  kernel->add_option("--max-order", cfg.max_order)->check(CLI::PositiveNumber);

  auto *expand = app.add_subcommand("expand", "Hermite expansion of a coefficient tensor");
  expand->add_option("--input", cfg.input_path, "Tensor JSON file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "chermite: " << e.what() << '\n';
    return kMalformedInput;
  }

  try {
    if (eval->parsed())
      return cmd_eval(cfg, out);
    if (coeffs->parsed())
      return cmd_coeffs(cfg, out);
    if (verify->parsed())
      return cmd_verify(cfg, out);
    if (kernel->parsed())
      return cmd_kernel(cfg, out);
    if (expand->parsed())
      return cmd_expand(cfg, out);
  } catch (const OutsideConvergenceDomain &e) {
    error_json(out, cfg.format, "OutsideConvergenceDomain", e.what());
    err << "chermite: " << e.what() << '\n';
    return kDomainViolation;
  } catch (const NotHermiteExpandable &e) {
    error_json(out, cfg.format, "NotHermiteExpandable", e.what());
    err << "chermite: " << e.what() << '\n';
    return kIdentityFailure;
  } catch (const Error &e) {
    err << "chermite: " << e.what() << '\n';
    return kMalformedInput;
  } catch (const Json::exception &e) {
    err << "chermite: invalid JSON: " << e.what() << '\n';
    return kMalformedInput;
  }
  return kMalformedInput;
}

} // namespace chermite::cli
