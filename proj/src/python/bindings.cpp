#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <variant>

#include "czeta/errors.hpp"
#include "czeta/harness.hpp"
#include "czeta/jet.hpp"

namespace py = pybind11;
using namespace czeta;

namespace {

// Roots come in as "p/q" strings or (p, q) pairs.
using RootArg = std::variant<std::string, std::pair<std::int64_t, std::int64_t>>;
// Parameters as numbers or strings such as "1/3" and "0.3+0.2i".
using ParamArg = std::variant<std::complex<double>, std::string>;

RootOfUnity to_root(const RootArg& r) {
  if (auto s = std::get_if<std::string>(&r)) return RootOfUnity::parse(*s);
  auto [p, q] = std::get<std::pair<std::int64_t, std::int64_t>>(r);
  return RootOfUnity(p, q);
}

std::vector<RootOfUnity> to_roots(const std::vector<RootArg>& rs) {
  std::vector<RootOfUnity> out;
  for (const auto& r : rs) out.push_back(to_root(r));
  return out;
}

HPComplex to_param(const ParamArg& a) {
  if (auto s = std::get_if<std::string>(&a)) return harness::parse_param(*s);
  auto z = std::get<std::complex<double>>(a);
  return HPComplex(z.real(), z.imag());
}

std::vector<HPComplex> to_params(const std::vector<ParamArg>& as) {
  std::vector<HPComplex> out;
  for (const auto& a : as) out.push_back(to_param(a));
  return out;
}

EvalConfig make_config(const std::string& method, std::int64_t cutoff, double target_err) {
  EvalConfig cfg;
  if (method == "asymptotic_tail") {
    cfg.method = EvalConfig::Method::kAsymptoticTail;
  } else if (method == "block_richardson") {
    cfg.method = EvalConfig::Method::kBlockRichardson;
  } else {
    throw ConfigError("unknown method '" + method + "'");
  }
  cfg.cutoff = cutoff;
  cfg.target_err = target_err;
  return cfg;
}

py::object json_loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

sym::IdentityCase make_case(const std::string& id, int q, const RootArg& x0, const std::vector<int>& k,
                            const std::vector<RootArg>& x, const ParamArg& a0, const std::vector<ParamArg>& a, int m,
                            int l) {
  auto parsed = sym::identity_from_name(id);
  if (!parsed) throw ConfigError("unknown identity '" + id + "'");
  sym::IdentityCase c;
  c.id = *parsed;
  c.q = q;
  c.x0 = to_root(x0);
  c.k = k;
  c.x = to_roots(x);
  c.a0 = to_param(a0);
  c.a = to_params(a);
  c.m = m;
  c.l = l;
  c.label = id + "/python";
  c.provenance = "explicit";
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cyclotomic multiple Hurwitz zeta values and reflection identity residuals";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<PrecisionError>(m, "PrecisionError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<GenerationError>(m, "GenerationError", base.ptr());

  py::class_<HPComplex>(m, "Value")
      .def_property_readonly("re", [](const HPComplex& v) { return v.re().to_double(); })
      .def_property_readonly("im", [](const HPComplex& v) { return v.im().to_double(); })
      .def_property_readonly("err", &HPComplex::err)
      .def_property_readonly("prec_bits", &HPComplex::prec_bits)
      .def_property_readonly("re_str", [](const HPComplex& v) { return v.re().to_string(); })
      .def_property_readonly("im_str", [](const HPComplex& v) { return v.im().to_string(); })
      .def("__complex__", [](const HPComplex& v) { return std::complex<double>(v.re().to_double(), v.im().to_double()); })
      .def("__abs__", &HPComplex::abs_d)
      .def("to_dict", [](const HPComplex& v) { return json_loads(harness::value_to_json(v)); })
      .def("__repr__", [](const HPComplex& v) { return "Value(" + v.to_string(20) + ")"; });

  m.def("default_precision", &default_precision);
  m.def("working_precision", &working_precision);
  m.def("set_working_precision", &set_working_precision, py::arg("bits"));

  const char* kMethod = "asymptotic_tail";
  double kTarget = EvalConfig{}.target_err;

  m.def(
      "li",
      [](int k, const RootArg& x, const ParamArg& c, const std::string& method, std::int64_t cutoff, double target) {
        return li_single(k, to_root(x), to_param(c), make_config(method, cutoff, target));
      },
      py::arg("k"), py::arg("x") = "0/1", py::arg("c") = ParamArg(std::complex<double>(1.0)),
      py::arg("method") = kMethod, py::arg("cutoff") = 0, py::arg("target_err") = kTarget,
      "sum_{n>=1} x^n / (n + c - 1)^k");
  m.def(
      "cmzv",
      [](const std::vector<int>& k, const std::vector<RootArg>& x, const std::string& method, std::int64_t cutoff,
         double target) { return cmzv(k, to_roots(x), make_config(method, cutoff, target)); },
      py::arg("k"), py::arg("x"), py::arg("method") = kMethod, py::arg("cutoff") = 0,
      py::arg("target_err") = kTarget);
  m.def(
      "cmhzv",
      [](const std::vector<int>& k, const std::vector<RootArg>& x, const std::vector<ParamArg>& c,
         const std::string& method, std::int64_t cutoff, double target) {
        return cmhzv(ZetaIndex(k, to_roots(x), to_params(c)), make_config(method, cutoff, target));
      },
      py::arg("k"), py::arg("x"), py::arg("c"), py::arg("method") = kMethod, py::arg("cutoff") = 0,
      py::arg("target_err") = kTarget, "Nested sum with denominators (n_i + c_i - 1)^k_i");
  m.def(
      "mtv", [](const std::vector<int>& k, const std::vector<RootArg>& x) { return mtv(k, to_roots(x)); },
      py::arg("k"), py::arg("x"));
  m.def("mtv_T", [](const std::vector<int>& k) { return mtv_T(k); }, py::arg("k"));
  m.def(
      "phi", [](const ParamArg& s, const RootArg& x) { return phi(to_param(s), to_root(x)); }, py::arg("s"),
      py::arg("x"));
  m.def(
      "phi_general", [](const ParamArg& s, const ParamArg& x) { return phi(to_param(s), to_param(x)); },
      py::arg("s"), py::arg("x"), "phi for a general complex |x| <= 1, x != 1");
  m.def(
      "phi_ext", [](const ParamArg& s, const RootArg& x) { return phi_ext(to_param(s), to_root(x)); },
      py::arg("s"), py::arg("x"));
  m.def(
      "mhs", [](std::int64_t n, const std::vector<int>& k, const std::vector<RootArg>& x) {
        return mhs(n, k, to_roots(x));
      },
      py::arg("n"), py::arg("k"), py::arg("x"));
  m.def(
      "mhs_hurwitz",
      [](std::int64_t n, const std::vector<int>& k, const std::vector<RootArg>& x, const std::vector<ParamArg>& a) {
        return mhs_hurwitz(n, k, to_roots(x), to_params(a));
      },
      py::arg("n"), py::arg("k"), py::arg("x"), py::arg("a"));
  m.def(
      "sym_li_bracket", [](int j, const RootArg& x) { return sym::sym_li_bracket(j, to_root(x)); }, py::arg("j"),
      py::arg("x"));
  m.def(
      "hat_li", [](int jp1, const RootArg& x, const ParamArg& a) { return sym::hat_li(jp1, to_root(x), to_param(a)); },
      py::arg("jp1"), py::arg("x"), py::arg("a"));
  m.def(
      "hat_ti", [](int jp1, const RootArg& x) { return sym::hat_ti(jp1, to_root(x)); }, py::arg("jp1"),
      py::arg("x"));
  m.def(
      "jet_rhs_closed_form",
      [](int mm, const RootArg& x, const ParamArg& a) { return jet_rhs_closed_form(mm, to_root(x), to_param(a)); },
      py::arg("m"), py::arg("x"), py::arg("a"));

  m.def("identities", [] {
    std::vector<std::string> out;
    for (auto id : sym::all_identities()) out.emplace_back(sym::identity_name(id));
    return out;
  });
  m.def(
      "check",
      [](const std::string& id, int q, const RootArg& x0, const std::vector<int>& k, const std::vector<RootArg>& x,
         const ParamArg& a0, const std::vector<ParamArg>& a, int mm, int l, double tol) {
        sym::IdentityCase c = make_case(id, q, x0, k, x, a0, a, mm, l);
        if (auto why = sym::admissibility_violation(c)) throw PreconditionError(id + ": " + *why);
        return json_loads(harness::residual_report_to_json(sym::check(c, {}, tol)));
      },
      py::arg("id"), py::arg("q") = 1, py::arg("x0") = "0/1", py::arg("k") = std::vector<int>{},
      py::arg("x") = std::vector<RootArg>{}, py::arg("a0") = ParamArg(std::complex<double>(0.5)),
      py::arg("a") = std::vector<ParamArg>{}, py::arg("m") = 0, py::arg("l") = 1, py::arg("tol") = 1e-10,
      "Residual report of one identity case, as a dict");
  m.def(
      "expansion_scaling",
      [](const std::string& lemma, int M, const ParamArg& delta, int n, const RootArg& x, const std::vector<int>& k,
         const std::vector<RootArg>& xs, const ParamArg& a0, const std::vector<ParamArg>& a, int j) {
        auto id = sym::expansion_from_name(lemma);
        if (!id) throw ConfigError("unknown lemma '" + lemma + "'");
        sym::ExpansionParams p;
        p.n = n;
        p.x = to_root(x);
        p.k = k;
        p.xs = to_roots(xs);
        p.a0 = to_param(a0);
        p.a = to_params(a);
        p.j = j;
        sym::ScalingReport r = sym::expansion_scaling(*id, p, M, to_param(delta));
        py::dict d;
        d["ratio"] = r.ratio;
        d["expected"] = r.expected;
        d["passed"] = r.passed;
        d["residual"] = r.at_delta;
        d["residual_half"] = r.at_half;
        return d;
      },
      py::arg("lemma"), py::arg("M"), py::arg("delta") = ParamArg(std::complex<double>(0.01)), py::arg("n") = 1,
      py::arg("x") = "0/1", py::arg("k") = std::vector<int>{}, py::arg("xs") = std::vector<RootArg>{},
      py::arg("a0") = ParamArg(std::complex<double>(0.5)), py::arg("a") = std::vector<ParamArg>{},
      py::arg("j") = 1);
  m.def(
      "run_suite",
      [](const std::string& toml_text) {
        harness::SuiteSpec spec = harness::parse_suite_toml(toml_text);
        harness::SuiteReport rep;
        {
          py::gil_scoped_release release;
          rep = harness::run_suite(spec);
        }
        return json_loads(harness::report_to_json(rep, -1));
      },
      py::arg("toml_text"), "Runs a TOML suite description and returns the report as a dict");
  m.def(
      "generate_cases",
      [](const std::string& toml_text) {
        py::list out;
        for (const auto& c : harness::generate_cases(harness::parse_suite_toml(toml_text))) {
          out.append(json_loads(harness::case_to_json(c)));
        }
        return out;
      },
      py::arg("toml_text"));
}
