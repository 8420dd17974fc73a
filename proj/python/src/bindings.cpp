#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "commands.hpp"
#include "output.hpp"
#include "symfp/anticoncentration.hpp"
#include "symfp/charpoly.hpp"
#include "symfp/error.hpp"
#include "symfp/exposure.hpp"
#include "symfp/linalg.hpp"
#include "symfp/rank_theory.hpp"

namespace py = pybind11;
using namespace symfp;

namespace {

using Rows = std::vector<std::vector<std::int64_t>>;

SymMatrix matrix(const Rows& rows) { return SymMatrix::from_integer_rows(rows); }

Rows to_rows(const SymMatrix& m) {
    Rows r(m.dim(), std::vector<std::int64_t>(m.dim()));
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) r[i][j] = m(i, j);
    return r;
}

std::vector<Residue> residues(const std::vector<std::int64_t>& v, const FpContext& ctx) {
    std::vector<Residue> out;
    out.reserve(v.size());
    for (auto x : v) out.push_back(ctx.reduce(x));
    return out;
}

PolyFp poly(const std::vector<std::int64_t>& coeffs, const FpContext& ctx) { return PolyFp::from_integers(coeffs, ctx); }

py::object from_json(const cli::Json& j) {
    return py::module_::import("json").attr("loads")(cli::to_json_text(j));
}

py::object cell_value(const cli::Cell& c) {
    return std::visit(
        [](const auto& v) -> py::object {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return py::none();
            else
                return py::cast(v);
        },
        c);
}

// Keyword overrides for run_command, named as on the command line.
void apply(cli::Config& c, const py::dict& kw) {
    for (const auto& [key_obj, value] : kw) {
        const auto key = py::cast<std::string>(key_obj);
        if (key == "n") c.n = py::cast<std::size_t>(value);
        else if (key == "p") c.primes = py::cast<std::vector<std::uint64_t>>(value);
        else if (key == "lam" || key == "lambdas") c.lambdas = py::cast<std::vector<std::int64_t>>(value);
        else if (key == "trials") c.trials = py::cast<std::uint64_t>(value);
        else if (key == "seed") c.seed = py::cast<std::uint64_t>(value);
        else if (key == "stream") c.stream = py::cast<std::uint64_t>(value);
        else if (key == "workers") c.workers = py::cast<std::size_t>(value);
        else if (key == "const_C") c.const_C = py::cast<std::vector<double>>(value);
        else if (key == "k") c.k = py::cast<unsigned>(value);
        else if (key == "L") c.L = py::cast<double>(value);
        else if (key == "m") c.m = py::cast<std::size_t>(value);
        else if (key == "t_range") std::tie(c.t_min, c.t_max) = py::cast<std::pair<std::size_t, std::size_t>>(value);
        else if (key == "steps") c.steps = py::cast<std::size_t>(value);
        else if (key == "k_max") c.k_max = py::cast<std::size_t>(value);
        else if (key == "vectors") c.vectors = py::cast<std::vector<std::string>>(value);
        else if (key == "t") c.thresholds = py::cast<std::vector<double>>(value);
        else if (key == "budget") c.budget = py::cast<std::size_t>(value);
        else if (key == "samples") c.samples = py::cast<std::uint64_t>(value);
        else if (key == "duplicate") c.duplicate = py::cast<bool>(value);
        else if (key == "model") c.model = py::cast<std::string>(value);
        else if (key == "min_vectors") c.min_vectors = py::cast<std::size_t>(value);
        else throw InvalidArgument("unknown option " + key);
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bindings for the symfp C++ core";
    m.attr("__version__") = SYMFP_VERSION;

    // InvalidArgument surfaces as ValueError.
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<PreconditionViolated>(m, "PreconditionViolated", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr e) {
        try {
            if (e) std::rethrow_exception(e);
        } catch (const InvalidArgument& ex) {
            PyErr_SetString(PyExc_ValueError, ex.what());
        }
    });

    m.def("is_prime", &is_prime, py::arg("m"));
    m.def("mod_inv", [](std::int64_t a, std::uint64_t p) { return mod_inv(a, FpContext(p)); }, py::arg("a"), py::arg("p"));
    m.def("primes_in_window", [](double X) { return primes_in_window({X}); }, py::arg("X"),
          "Primes in (e^X/2, e^X].");
    m.def("mix64", &mix64, py::arg("x"));

    m.def("sample_rademacher",
          [](std::size_t n, std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
              return to_rows(sample_symmetric_rademacher(n, {seed, stream}, trial));
          },
          py::arg("n"), py::arg("seed") = 1, py::arg("stream") = 0, py::arg("trial") = 0);
    m.def("rank_mod_p", [](const Rows& a, std::uint64_t p) { return rank_fp(matrix(a), FpContext(p)); }, py::arg("a"),
          py::arg("p"));
    m.def("kernel_basis", [](const Rows& a, std::uint64_t p) { return kernel_basis(matrix(a), FpContext(p)); },
          py::arg("a"), py::arg("p"));
    m.def("corank_profile",
          [](const Rows& a, std::uint64_t p, std::int64_t lam, bool fresh) {
              const FpContext ctx(p);
              return corank_profile(matrix(a), ctx, ctx.reduce(lam),
                                    fresh ? ProfileMethod::fresh : ProfileMethod::incremental)
                  .coranks;
          },
          py::arg("a"), py::arg("p"), py::arg("lam") = 0, py::arg("fresh") = false,
          "Coranks c_1..c_n of the leading blocks of a - lam I over F_p.");

    m.def("limiting_corank_pmf",
          [](std::uint64_t p, std::size_t k_max) {
              const auto d = limiting_corank_pmf(FpContext(p), k_max);
              return py::make_tuple(d.pmf, d.tail_mass);
          },
          py::arg("p"), py::arg("k_max") = 40, "Returns (pmf[0..k_max], tail mass).");
    m.def("uniform_transition_pmf",
          [](std::uint64_t p, std::size_t k) {
              const auto t = uniform_transition_pmf(FpContext(p), k);
              return py::make_tuple(t.down, t.stay, t.up);
          },
          py::arg("p"), py::arg("k"));

    m.def("walk_distribution",
          [](const std::vector<std::int64_t>& v, std::uint64_t p) {
              const FpContext ctx(p);
              return walk_distribution(residues(v, ctx), ctx).prob;
          },
          py::arg("v"), py::arg("p"));
    m.def("walk_distribution_fourier",
          [](const std::vector<std::int64_t>& v, std::uint64_t p) {
              const FpContext ctx(p);
              return walk_distribution_fourier(residues(v, ctx), ctx).prob;
          },
          py::arg("v"), py::arg("p"));
    m.def("atom_probability",
          [](const std::vector<std::int64_t>& v, std::uint64_t p) {
              const FpContext ctx(p);
              const auto a = atom_probability(residues(v, ctx), ctx);
              return py::make_tuple(a.probability, a.residue);
          },
          py::arg("v"), py::arg("p"), "Returns (probability, smallest maximizing residue).");
    m.def("discrepancy",
          [](const std::vector<std::int64_t>& v, std::uint64_t p) {
              const FpContext ctx(p);
              return discrepancy(residues(v, ctx), ctx);
          },
          py::arg("v"), py::arg("p"));
    m.def("rk_star",
          [](const std::vector<std::int64_t>& v, std::uint64_t p, unsigned k) {
              const FpContext ctx(p);
              return rk_star(residues(v, ctx), ctx, k);
          },
          py::arg("v"), py::arg("p"), py::arg("k") = 1);
    m.def("halasz_bound",
          [](const std::vector<std::int64_t>& v, std::uint64_t p, unsigned k, double L, double C) {
              const FpContext ctx(p);
              const auto r = halasz_bound(residues(v, ctx), ctx, {k, L, C});
              py::dict d;
              d["bound"] = r.bound;
              d["structure_term"] = r.structure_term;
              d["rk_star"] = r.rk_star;
              d["support"] = r.support;
              d["support_ok"] = r.support_ok;
              d["size_ok"] = r.size_ok;
              d["level_ok"] = r.level_ok;
              return d;
          },
          py::arg("v"), py::arg("p"), py::arg("k") = 1, py::arg("L") = 5.0, py::arg("C") = 1.0);
    m.def("bad_set_bound",
          [](std::size_t n, std::size_t d, unsigned k, std::size_t s1, std::size_t s2, double t, std::uint64_t p) {
              return bad_set_bound({n, d, k, s1, s2, t}, FpContext(p));
          },
          py::arg("n"), py::arg("d"), py::arg("k"), py::arg("s1"), py::arg("s2"), py::arg("t"), py::arg("p"));
    m.def("bad_set_enumerate",
          [](std::size_t n, std::size_t d, unsigned k, std::size_t s1, std::size_t s2, double t, std::uint64_t p) {
              return bad_set_enumerate({n, d, k, s1, s2, t}, FpContext(p));
          },
          py::arg("n"), py::arg("d"), py::arg("k"), py::arg("s1"), py::arg("s2"), py::arg("t"), py::arg("p"));

    m.def("charpoly_mod_p",
          [](const Rows& a, std::uint64_t p) { return charpoly_mod_p(matrix(a), FpContext(p)).coeffs(); },
          py::arg("a"), py::arg("p"), "Coefficients of det(tI - a) mod p, low to high.");
    m.def("charpoly_exact",
          [](const Rows& a) {
              py::list out;
              const auto builtins = py::module_::import("builtins");
              for (const auto& c : charpoly_exact(matrix(a))) out.append(builtins.attr("int")(c.str()));
              return out;
          },
          py::arg("a"), "Exact integer coefficients of det(tI - a), low to high.");
    m.def("count_roots",
          [](const std::vector<std::int64_t>& coeffs, std::uint64_t p) {
              const FpContext ctx(p);
              return count_roots_fp(poly(coeffs, ctx), ctx);
          },
          py::arg("coeffs"), py::arg("p"));
    m.def("is_irreducible",
          [](const std::vector<std::int64_t>& coeffs, std::uint64_t p) {
              const FpContext ctx(p);
              return is_irreducible_fp(poly(coeffs, ctx), ctx);
          },
          py::arg("coeffs"), py::arg("p"));
    m.def("irreducibility_certificate",
          [](const Rows& a, std::size_t budget) -> py::object {
              const auto mat = matrix(a);
              const auto cert = irreducibility_certificate(mat, budget);
              py::dict d;
              d["witness"] = cert.witness ? py::cast(*cert.witness) : py::none();
              d["primes_tried"] = cert.primes_tried;
              d["verified"] = verify_certificate(mat, cert);
              return d;
          },
          py::arg("a"), py::arg("budget") = 25);
    m.def("weighted_root_sum", [](const Rows& a, double X) { return weighted_root_sum(matrix(a), X); }, py::arg("a"),
          py::arg("X"));

    m.def("run_command",
          [](const std::string& name, const py::kwargs& kw) {
              auto cfg = cli::default_config(name);
              apply(cfg, kw);
              const auto r = cli::run_command(cfg);
              py::list rows;
              for (const auto& row : r.rows) {
                  py::dict d;
                  for (std::size_t i = 0; i < r.columns.size(); ++i) d[py::str(r.columns[i])] = cell_value(row[i]);
                  rows.append(d);
              }
              py::list checks;
              for (const auto& c : r.checks) checks.append(py::make_tuple(c.name, c.passed, c.detail));
              py::dict out;
              out["command"] = r.command;
              out["columns"] = r.columns;
              out["rows"] = rows;
              out["summary"] = from_json(r.summary);
              out["meta"] = from_json(r.meta);
              out["checks"] = checks;
              out["csv"] = cli::csv_rows(r);
              return out;
          },
          py::arg("name"),
          "Runs a CLI subcommand in-process. Keyword options use the flag names with underscores.");
}
