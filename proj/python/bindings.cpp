#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fanocert/analytic.hpp"
#include "fanocert/certify.hpp"
#include "fanocert/cli.hpp"
#include "fanocert/codim.hpp"
#include "fanocert/exact.hpp"
#include "fanocert/report.hpp"

namespace py = pybind11;
using namespace fanocert;

namespace {

py::object to_int(const BigInt& z) { return py::int_(py::str(z.get_str())); }

py::object to_fraction(const Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_int(q.get_num()), to_int(q.get_den()));
}

py::object from_json(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

DegreeTuple degrees_of(const py::object& d) {
  if (py::isinstance<py::str>(d)) return parse_degrees(d.cast<std::string>());
  return DegreeTuple(d.cast<std::vector<int>>());
}

CertifyConfig levels_config(const std::optional<std::vector<int>>& levels) {
  CertifyConfig cfg;
  if (levels) cfg.levels = *levels;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact and interval certification of codimension bounds for Fano complete intersections";
  m.attr("__version__") = std::string(kToolVersion);

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def(
      "parse_degrees",
      [](const std::string& s) {
        DegreeTuple d = parse_degrees(s);
        return std::vector<int>(d.degrees().begin(), d.degrees().end());
      },
      py::arg("text"));
  m.def(
      "binomial", [](unsigned long n, unsigned long r) { return to_int(binomial(n, r)); }, py::arg("n"), py::arg("r"));
  m.def(
      "slopes",
      [](const py::object& d, int l) {
        py::list out;
        for (const auto& q : slope_sequence(degrees_of(d), l).expand()) out.append(to_fraction(q));
        return out;
      },
      py::arg("degrees"), py::arg("l") = 0);
  m.def(
      "tail_product", [](const py::object& d, int l) { return to_fraction(tail_product(degrees_of(d), l)); },
      py::arg("degrees"), py::arg("l") = 0);
  m.def(
      "gamma_threshold", [](const py::object& d, int l) { return to_fraction(gamma_threshold(degrees_of(d), l)); },
      py::arg("degrees"), py::arg("l") = 0);
  m.def(
      "gamma_e", [](const py::object& d, int l, long e) { return to_int(gamma_e(degrees_of(d), l, e)); },
      py::arg("degrees"), py::arg("l"), py::arg("e"));
  m.def(
      "gamma_min",
      [](const py::object& d, int l) {
        GammaMinimum g = gamma_min(degrees_of(d), l);
        return py::make_tuple(g.argmin, to_int(g.value));
      },
      py::arg("degrees"), py::arg("l") = 0);
  m.def(
      "beta", [](long k, long a, long t) { return to_int(beta_fn(k, a, t)); }, py::arg("k"), py::arg("a"), py::arg("t"));
  m.def(
      "alpha", [](long M, long k) { return to_int(alpha_fn(M, k)); }, py::arg("M"), py::arg("k"));
  m.def(
      "bound",
      [](const std::string& name, const std::map<std::string, long>& params) {
        auto id = parse_bound_name(name);
        if (!id) throw py::value_error("unknown bound " + name);
        return to_fraction(closed_form_bound(*id, params));
      },
      py::arg("name"), py::arg("params"));
  m.def("hypothesis_ok", [](long k, long M) { return hypothesis_check(k, M).ok; }, py::arg("k"), py::arg("M"));
  m.def(
      "certify",
      [](const py::object& d, std::optional<std::vector<int>> levels) {
        Certificate c = certify_tuple(degrees_of(d), levels_config(levels));
        return from_json(to_json(c));
      },
      py::arg("degrees"), py::arg("levels") = py::none());
  m.def(
      "sweep",
      [](long k_lo, long k_hi, const std::string& m_rule, const std::string& shape, std::optional<std::vector<int>> levels,
         unsigned threads) {
        GridSpec g;
        g.k_lo = k_lo;
        g.k_hi = k_hi;
        auto r = parse_m_rule(m_rule);
        auto s = parse_shape(shape);
        if (!r || *r == MRule::range) throw py::value_error("m_rule must be min-multiple or min");
        if (!s || *s == Shape::explicit_tuples) throw py::value_error("shape must be equal or star");
        g.m_rule = *r;
        g.shape = *s;
        SweepConfig cfg{levels_config(levels), threads};
        py::list out;
        std::vector<Certificate> certs;
        {
          py::gil_scoped_release release;
          certs = sweep(g, cfg);
        }
        for (const auto& c : certs) out.append(from_json(to_json(c)));
        return out;
      },
      py::arg("k_lo"), py::arg("k_hi"), py::arg("m_rule") = "min-multiple", py::arg("shape") = "equal",
      py::arg("levels") = py::none(), py::arg("threads") = 1);
  m.def(
      "lemma32",
      [](long k, long M) {
        Lemma32Result r = lemma32_check(k, M);
        py::dict out;
        out["beta2"] = to_int(r.beta2);
        out["beta3"] = to_int(r.beta3);
        out["exact_check"] = std::string(check_status_tag(r.exact_check));
        out["lower_leg"] = std::string(check_status_tag(r.lower_leg));
        out["upper_leg"] = std::string(check_status_tag(r.upper_leg));
        out["conclusion"] = std::string(check_status_tag(r.conclusion));
        out["ratio"] = py::make_tuple(r.ratio.lo().to_double(), r.ratio.hi().to_double());
        return out;
      },
      py::arg("k"), py::arg("M"));
  m.def(
      "evaluate",
      [](const std::string& expr, const std::map<std::string, std::pair<double, double>>& box,
         const std::map<std::string, long>& params, long precision) {
        auto id = parse_expr_id(expr);
        if (!id) throw py::value_error("unknown expression " + expr);
        std::map<std::string, std::pair<Rational, Rational>> corners;
        for (const auto& [k, v] : box) corners[k] = {Rational(v.first), Rational(v.second)};
        Interval iv = iv_eval(*id, make_box(corners, precision), params, precision);
        return py::make_tuple(to_fraction(iv.lo().to_rational()), to_fraction(iv.hi().to_rational()));
      },
      py::arg("expr"), py::arg("box"), py::arg("params") = std::map<std::string, long>{}, py::arg("precision") = 128);
  m.def(
      "certify_sign",
      [](const std::string& expr, const std::map<std::string, std::pair<double, double>>& box,
         const std::map<std::string, long>& params, const std::string& sign, long precision, int max_depth) {
        auto id = parse_expr_id(expr);
        if (!id) throw py::value_error("unknown expression " + expr);
        if (sign != "+" && sign != "-") throw py::value_error("sign must be '+' or '-'");
        std::map<std::string, std::pair<Rational, Rational>> corners;
        for (const auto& [k, v] : box) corners[k] = {Rational(v.first), Rational(v.second)};
        SignOptions opts;
        opts.precision = precision;
        opts.max_depth = max_depth;
        SignCertificate c;
        {
          py::gil_scoped_release release;
          c = certify_sign(*id, make_box(corners, precision), params, sign == "+" ? Sign::positive : Sign::negative, opts);
        }
        return from_json(to_json(c));
      },
      py::arg("expr"), py::arg("box"), py::arg("params") = std::map<std::string, long>{}, py::arg("sign") = "+",
      py::arg("precision") = 128, py::arg("max_depth") = 40);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
