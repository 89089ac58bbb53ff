#include "frobenius/confined.hpp"
#include "frobenius/errors.hpp"
#include "frobenius/oracle.hpp"
#include "frobenius/potentials.hpp"
#include "frobenius/series.hpp"
#include "frobenius/unconfined.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>

namespace py = pybind11;
using namespace frobenius;

namespace {

using Params = std::map<std::string, std::string>;

// Reals arrive as str or number; str keeps every digit.
std::string text(const py::object& value) { return py::str(value); }

Params to_params(const py::dict& params) {
  Params out;
  for (const auto& [key, value] : params) out[py::str(key)] = text(py::reinterpret_borrow<py::object>(value));
  return out;
}

py::dict bracket_dict(const BracketResult& b) {
  py::dict d;
  d["k"] = b.k;
  d["energy"] = to_double(b.energy());
  d["energy_text"] = format_full(b.energy());
  d["lower"] = format_full(b.lower);
  d["upper"] = format_full(b.upper);
  d["width"] = to_double(b.width);
  d["R"] = to_double(b.R);
  d["K"] = b.K;
  d["converged"] = b.converged;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Power-series radial Schroedinger solver";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.attr("default_digits") = kDefaultDigits;

  m.def(
      "confined_levels",
      [](const std::string& potential, const py::dict& params, const py::object& l,
         const py::object& R, int states, const py::object& tol, unsigned digits) {
        const Params p = to_params(params);
        const std::string l_text = text(l), R_text = text(R), tol_text = text(tol);
        WorkingPrecision guard(digits);
        ConfinedResult result;
        {
          py::gil_scoped_release release;
          result = solve_confined(catalog_potential(potential, p), parse_real(l_text),
                                  parse_real(R_text), states, parse_real(tol_text));
        }
        py::list out;
        for (std::size_t n = 0; n < result.states.size(); ++n) {
          py::dict d;
          d["n"] = n;
          d["lambda"] = to_double(result.states[n].lambda);
          d["lambda_text"] = format_full(result.states[n].lambda);
          d["K"] = result.K_used;
          out.append(d);
        }
        return out;
      },
      py::arg("potential"), py::arg("params") = py::dict(), py::arg("l") = 0, py::arg("R"),
      py::arg("states") = 1, py::arg("tol") = "1e-10", py::arg("digits") = kDefaultDigits,
      "Lowest eigenvalues with u(R) = 0.");

  m.def(
      "unconfined_level",
      [](const std::string& potential, const py::dict& params, const py::object& l, int k,
         const py::object& tol, const py::object& R0, const py::object& dR,
         int K_start, unsigned digits) {
        const Params p = to_params(params);
        const std::string l_text = text(l), tol_text = text(tol);
        std::optional<std::string> R0_text, dR_text;
        if (!R0.is_none()) R0_text = text(R0);
        if (!dR.is_none()) dR_text = text(dR);
        WorkingPrecision guard(digits);
        Certification cert;
        {
          py::gil_scoped_release release;
          const PotentialSpec spec = catalog_potential(potential, p);
          const Real lv = parse_real(l_text);
          RSchedule schedule = default_schedule(spec, lv, parse_real(tol_text));
          if (R0_text) schedule.R0 = parse_real(*R0_text);
          if (dR_text) schedule.dR = parse_real(*dR_text);
          UnconfinedOptions options;
          options.K_start = K_start;
          cert = certify_state(spec, lv, k, schedule, options);
        }
        py::dict d = bracket_dict(cert.result);
        py::list trace;
        for (const auto& b : cert.trace) trace.append(bracket_dict(b));
        d["trace"] = trace;
        return d;
      },
      py::arg("potential"), py::arg("params") = py::dict(), py::arg("l") = 0, py::arg("k") = 0,
      py::arg("tol") = "1e-10", py::arg("R0") = py::none(), py::arg("dR") = py::none(),
      py::arg("K_start") = 40, py::arg("digits") = kDefaultDigits,
      "Free level k bracketed between the Dirichlet and derivative roots, grown in R.");

  m.def(
      "anharmonic_energy",
      [](int J, const py::object& z, int n, int l, const py::object& tol, unsigned digits) {
        const std::string z_text = text(z), tol_text = text(tol);
        WorkingPrecision guard(digits);
        BracketResult b;
        {
          py::gil_scoped_release release;
          b = anharmonic_energy({J, parse_real(z_text)}, {n, l}, parse_real(tol_text));
        }
        return bracket_dict(b);
      },
      py::arg("J"), py::arg("z"), py::arg("n") = 0, py::arg("l") = 0, py::arg("tol") = "1e-10",
      py::arg("digits") = kDefaultDigits, "E_nl of V = z r^2 + r^(2J).");

  m.def(
      "level_crossing",
      [](int J, std::pair<int, int> a, std::pair<int, int> b, const py::object& z_lo,
         const py::object& z_hi, const py::object& tol, unsigned digits) {
        const std::string lo = text(z_lo), hi = text(z_hi), tol_text = text(tol);
        WorkingPrecision guard(digits);
        CrossingResult c;
        {
          py::gil_scoped_release release;
          c = find_level_crossing(J, {a.first, a.second}, {b.first, b.second},
                                  {parse_real(lo), parse_real(hi)}, parse_real(tol_text));
        }
        py::dict d;
        d["z"] = to_double(c.z);
        d["z_text"] = format_full(c.z);
        d["energy"] = to_double(c.energy);
        d["evaluations"] = c.evaluations;
        return d;
      },
      py::arg("J"), py::arg("a"), py::arg("b"), py::arg("z_lo"), py::arg("z_hi"),
      py::arg("tol") = "1e-6", py::arg("digits") = kDefaultDigits,
      "z where levels a = (n, l) and b cross, inside (z_lo, z_hi).");

  m.def(
      "series_coefficients",
      [](const std::string& potential, const py::dict& params, const py::object& l,
         const py::object& lam, int K, unsigned digits) {
        const Params p = to_params(params);
        const std::string l_text = text(l), lam_text = text(lam);
        WorkingPrecision guard(digits);
        const auto table =
            build_series(catalog_potential(potential, p), parse_real(l_text), K, parse_real(lam_text));
        std::vector<std::string> out;
        for (const auto& a : table.values()) out.push_back(format_full(a));
        return out;
      },
      py::arg("potential"), py::arg("params") = py::dict(), py::arg("l") = 0, py::arg("lam"),
      py::arg("K") = 20, py::arg("digits") = kDefaultDigits,
      "a_0 .. a_K of u = r^delta sum a_j r^(s j), a_0 = 1.");

  m.def(
      "oracle_levels",
      [](const std::string& potential, const py::dict& params, double l, int states, double r_max,
         int points) {
        GridProblem g;
        g.potential = direct_potential(potential, to_params(params));
        g.l = l;
        g.r_max = r_max;
        g.points = points;
        py::gil_scoped_release release;
        return oracle_eigenvalues(g, states);
      },
      py::arg("potential"), py::arg("params") = py::dict(), py::arg("l") = 0.0,
      py::arg("states") = 1, py::arg("r_max") = 10.0, py::arg("points") = 2000,
      "Finite-difference eigenvalues for cross-checks.");
}
