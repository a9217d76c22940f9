#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kwlie/algfile.hpp"
#include "kwlie/cli.hpp"
#include "kwlie/env.hpp"
#include "kwlie/index.hpp"
#include "kwlie/repn.hpp"

namespace py = pybind11;
using namespace kwlie;

namespace {

LieAlgebra load(const std::string& algebra_json) { return parse_algebra_file(algebra_json); }

Vec character_from(const LieAlgebra& l, const std::vector<std::string>& chi) {
    if (chi.size() != l.dim()) raise(errc::shape_mismatch, "character length != dim");
    Vec v(l.field(), l.dim());
    for (std::size_t i = 0; i < chi.size(); ++i) v.a[i] = l.field().parse(chi[i]);
    return v;
}

py::dict chop_to_dict(const ChopResult& cr) {
    py::dict d;
    d["module_dim"] = cr.module_dim;
    d["max_abs_dim"] = cr.max_abs_dim();
    d["seed"] = cr.seed;
    py::list fs;
    for (const auto& f : cr.factors) {
        py::dict fd;
        fd["dim"] = f.action.dim;
        fd["mult"] = f.multiplicity;
        fd["endo_degree"] = f.endo_degree;
        fd["abs_dim"] = f.abs_dim;
        fs.append(fd);
    }
    d["factors"] = fs;
    return d;
}

} // namespace

PYBIND11_MODULE(_kwlie, mod) {
    mod.doc() = "exact modular Lie algebra computations: family builders, coadjoint index, "
                "restricted closures, enveloping-algebra isomorphism witnesses, MeatAxe sweeps";

    mod.def(
        "family",
        [](std::uint64_t p, unsigned m, unsigned k, const std::string& which) {
            return emit_algebra_file(family_build(p, m, k, family_kind_from_string(which)));
        },
        py::arg("p"), py::arg("m"), py::arg("k"), py::arg("which"),
        "Build a family algebra (which in {'A','A_D','L','Lprime'}) and return its JSON file text.");

    mod.def(
        "validate",
        [](const std::string& algebra_json) {
            py::dict d;
            try {
                LieAlgebra l = load(algebra_json);
                d["ok"] = true;
                d["dim"] = l.dim();
                d["message"] = "ok";
            } catch (const error& e) {
                d["ok"] = false;
                d["message"] = std::string(e.what());
            }
            return d;
        },
        py::arg("algebra_json"), "Parse + validate an algebra file; returns {ok, message}.");

    mod.def(
        "index",
        [](const std::string& algebra_json) {
            IndexReport r = index_symbolic(load(algebra_json));
            py::dict d;
            d["dim"] = r.dim;
            d["ind"] = r.index;
            d["generic_rank"] = r.generic_rank;
            d["kw1_exponent"] = r.kw1_exponent;
            return d;
        },
        py::arg("algebra_json"), "Exact coadjoint index via symbolic generic rank.");

    mod.def(
        "closure_dims",
        [](const std::string& algebra_json) {
            LieAlgebra l = load(algebra_json);
            EchelonBasis ad_span(l.field(), l.dim() * l.dim());
            for (std::size_t i = 0; i < l.dim(); ++i) ad_span.insert(l.ad_basis(i).flatten());
            Subspace cl = restricted_closure(l);
            py::dict d;
            d["ad_dim"] = ad_span.dim();
            d["closure_dim"] = cl.dim();
            return d;
        },
        py::arg("algebra_json"), "Dimensions of ad(L) and of its restricted closure in Der(L).");

    mod.def(
        "restrictable",
        [](const std::string& algebra_json) {
            RestrictabilityReport r = is_restrictable(load(algebra_json));
            py::dict d;
            d["restrictable"] = r.restrictable;
            d["witness"] = r.restrictable ? std::string() : r.witness_name;
            return d;
        },
        py::arg("algebra_json"), "Whether ad(L) is closed under p-th matrix powers.");

    mod.def(
        "iso_check",
        [](std::uint64_t p, unsigned m, unsigned k, unsigned cap) {
            IsoReport r = iso_verify(iso_build(p, m, k, cap));
            py::dict d;
            d["brackets_ok"] = r.brackets_ok;
            d["surjective_ok"] = r.surjective_ok;
            d["pass"] = r.pass();
            d["log"] = r.log;
            return d;
        },
        py::arg("p"), py::arg("m"), py::arg("k"), py::arg("cap") = 0,
        "Verify the U(L') -> U(L) witness (bracket compatibility and D0 recovery).");

    mod.def(
        "chop_regular",
        [](const std::string& algebra_json, const std::vector<std::string>& chi,
           std::uint64_t seed) {
            LieAlgebra l = load(algebra_json);
            Vec v = character_from(l, chi);
            ReducedAlgebra ra = reduced_algebra(l, chi_to_mu(l, v));
            return chop_to_dict(chop(regular_module(ra), seed));
        },
        py::arg("algebra_json"), py::arg("chi"), py::arg("seed") = 1,
        "Chop the regular module of the reduced algebra at a character "
        "(chi as element strings in basis order).");

    mod.def(
        "kw1_sweep",
        [](std::uint64_t p, unsigned m, unsigned k, std::uint64_t seed, std::size_t budget,
           unsigned random_ext_count) {
            CharacterSet cs;
            cs.random_ext_count = random_ext_count;
            SweepReport r = m_sweep(p, m, k, FamilyKind::L, cs, seed, budget);
            IndexReport irLp = index_symbolic(family_build(p, m, k, FamilyKind::Lprime));
            py::dict d;
            d["dim"] = r.algebra_dim;
            d["reduced_dim"] = r.reduced_dim;
            d["ind"] = r.algebra_dim - 2 * r.kw1_exponent;
            d["ind_lprime"] = irLp.index;
            d["kw1_exponent"] = r.kw1_exponent;
            d["kw1_predicted"] = r.kw1_predicted_dim;
            d["max_abs_simple_dim"] = r.observed_max_abs;
            d["verdict"] = r.verdict;
            return d;
        },
        py::arg("p"), py::arg("m") = 1, py::arg("k") = 3, py::arg("seed") = 1,
        py::arg("budget") = 4096, py::arg("random_ext_count") = 50,
        "Desk-scale M(L) sweep for the family algebra L; returns the KW1 verdict.");

    mod.def(
        "run_cli",
        [](const std::vector<std::string>& argv) {
            CommandResult r = run_command(argv);
            return py::make_tuple(r.exit_code, r.output);
        },
        py::arg("argv"), "Run a CLI subcommand; returns (exit_code, report_text).");

    py::register_exception<error>(mod, "KwlieError");
}
