#include "kwlie/cli.hpp"

#include "kwlie/algfile.hpp"
#include "kwlie/env.hpp"
#include "kwlie/index.hpp"
#include "kwlie/repn.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace kwlie {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::parse_error, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(errc::parse_error, "cannot write '" + path + "'");
    out << text;
}

/// Ordered key:value collector for the machine summary block.
class Summary {
public:
    void add(const std::string& key, const std::string& value) { kv_.emplace_back(key, value); }
    void add(const std::string& key, const char* value) { kv_.emplace_back(key, value); }
    void add(const std::string& key, bool value) { add(key, value ? "true" : "false"); }
    template <typename T,
              std::enable_if_t<std::is_integral_v<T> && !std::is_same_v<T, bool>, int> = 0>
    void add(const std::string& key, T value) {
        add(key, std::to_string(value));
    }

    std::string str() const {
        std::ostringstream os;
        os << "---summary---\n";
        for (const auto& [k, v] : kv_) os << k << ": " << v << "\n";
        os << "---summary---\n";
        return os.str();
    }

private:
    std::vector<std::pair<std::string, std::string>> kv_;
};

Vec parse_character(const LieAlgebra& l, const std::string& spec) {
    const Field& F = l.field();
    Vec chi(F, l.dim());
    if (spec == "zeros") return chi;
    if (spec == "ones") {
        for (auto& x : chi.a) x = F.from_int(1);
        return chi;
    }
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t semi = spec.find(';', pos);
        parts.push_back(spec.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    if (parts.size() != l.dim())
        raise(errc::parse_error, "character needs " + std::to_string(l.dim()) +
                                     " ';'-separated values, got " + std::to_string(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) chi.a[i] = F.parse(parts[i]);
    return chi;
}

std::string factor_table(const ChopResult& cr) {
    std::ostringstream os;
    os << "  factor  dim  mult  endo  abs_dim  certificate\n";
    for (const auto& f : cr.factors) {
        os << "    -    " << std::setw(4) << f.action.dim << "  " << std::setw(4) << f.multiplicity
           << "  " << std::setw(4) << f.endo_degree << "  " << std::setw(7) << f.abs_dim << "  "
           << (f.cert.factor_poly.empty() ? f.cert.split_element
                                          : "Null(g) with g = " + f.cert.factor_poly)
           << "\n";
    }
    return os.str();
}

int cmd_check(const std::string& file, std::ostringstream& out) {
    LieAlgebra l = parse_algebra_file(read_file(file));
    out << "algebra: " << file << "\n";
    out << "field: " << l.field().describe() << "\n";
    out << "dim: " << l.dim() << "\n";
    out << "validation: pass (antisymmetry + Jacobi on all basis triples)\n";
    Summary s;
    s.add("command", "check");
    s.add("file", file);
    s.add("dim", l.dim());
    s.add("valid", true);
    out << s.str();
    return 0;
}

int cmd_family(std::uint64_t p, unsigned m, unsigned k, const std::string& which,
               const std::string& emit, std::ostringstream& out) {
    FamilyKind kind = family_kind_from_string(which);
    LieAlgebra l = family_build(p, m, k, kind);
    std::string text = emit_algebra_file(l);
    if (!emit.empty()) {
        write_file(emit, text);
        out << "wrote " << emit << "\n";
    } else {
        out << text;
    }
    Summary s;
    s.add("command", "family");
    s.add("which", family_kind_name(kind));
    s.add("p", p);
    s.add("m", m);
    s.add("k", k);
    s.add("dim", l.dim());
    out << s.str();
    return 0;
}

int cmd_index(const std::string& file, unsigned sample, unsigned ext, std::uint64_t seed,
              std::ostringstream& out) {
    LieAlgebra l = parse_algebra_file(read_file(file));
    IndexReport rep = index_symbolic(l);
    out << "dim: " << rep.dim << "\n";
    out << "generic coadjoint rank (symbolic, exact over the closure): " << rep.generic_rank
        << "\n";
    out << "ind: " << rep.index << "\n";
    out << "kw1 exponent (dim - ind)/2: " << rep.kw1_exponent << "\n";
    Summary s;
    s.add("command", "index");
    s.add("dim", rep.dim);
    s.add("ind", rep.index);
    s.add("generic_rank", rep.generic_rank);
    s.add("kw1_exponent", rep.kw1_exponent);
    if (sample > 0) {
        SampledIndex si = index_sampled(l, sample, ext, seed);
        out << "sampled min stabilizer dim (" << sample << " trials over F_" << l.field().p()
            << "^" << l.field().m() * ext << "): " << si.min_stabilizer_dim << "\n";
        out << "witness chi: " << si.witness_chi.str() << "\n";
        if (si.min_stabilizer_dim < rep.index)
            raise(errc::internal, "sampled stabilizer below symbolic index");
        s.add("sampled_min", si.min_stabilizer_dim);
        s.add("witness_chi", si.witness_chi.str());
        s.add("trials", sample);
        s.add("ext", ext);
        s.add("seed", seed);
    }
    out << s.str();
    return 0;
}

int cmd_closure(const std::string& file, std::ostringstream& out) {
    LieAlgebra l = parse_algebra_file(read_file(file));
    EchelonBasis ad_span(l.field(), l.dim() * l.dim());
    for (std::size_t i = 0; i < l.dim(); ++i) ad_span.insert(l.ad_basis(i).flatten());
    Subspace cl = restricted_closure(l);
    out << "dim: " << l.dim() << "\n";
    out << "dim ad(L): " << ad_span.dim() << "\n";
    out << "dim restricted closure of ad(L) in Der(L): " << cl.dim() << "\n";
    out << (cl.dim() == ad_span.dim() ? "ad(L) is already p-closed\n"
                                      : "closure strictly contains ad(L)\n");
    Summary s;
    s.add("command", "closure");
    s.add("dim", l.dim());
    s.add("ad_dim", ad_span.dim());
    s.add("closure_dim", cl.dim());
    out << s.str();
    return 0;
}

int cmd_restrictable(const std::string& file, std::ostringstream& out) {
    LieAlgebra l = parse_algebra_file(read_file(file));
    RestrictabilityReport rep = is_restrictable(l);
    out << "dim: " << l.dim() << "\n";
    if (rep.restrictable) {
        out << "restrictable: ad(e)^p lies in ad(L) for every basis element e\n";
    } else {
        out << "NOT restrictable: ad(" << rep.witness_name << ")^p is outside ad(L)\n";
        out << "witness matrix ad(" << rep.witness_name << ")^p:\n" << rep.witness_power.str();
    }
    Summary s;
    s.add("command", "restrictable");
    s.add("dim", l.dim());
    s.add("restrictable", rep.restrictable);
    s.add("witness", rep.restrictable ? std::string("-") : rep.witness_name);
    out << s.str();
    return 0;
}

int cmd_iso_check(std::uint64_t p, unsigned m, unsigned k, unsigned cap, std::ostringstream& out) {
    IsoWitness w = iso_build(p, m, k, cap);
    IsoReport rep = iso_verify(w);
    out << "source: L' (dim " << w.source.dim() << "), target: U(L) at cap " << w.cap << "\n";
    out << "images: identity on x_1..x_k and D; D' -> D^" << p << " + D0\n";
    for (const auto& line : rep.log) out << "  " << line << "\n";
    out << "bracket compatibility: " << (rep.brackets_ok ? "pass" : "FAIL") << "\n";
    out << "generator surjectivity: " << (rep.surjective_ok ? "pass" : "FAIL") << "\n";
    Summary s;
    s.add("command", "iso-check");
    s.add("p", p);
    s.add("m", m);
    s.add("k", k);
    s.add("cap", w.cap);
    s.add("brackets_ok", rep.brackets_ok);
    s.add("surjective_ok", rep.surjective_ok);
    s.add("verdict", rep.pass() ? std::string("pass") : std::string("fail"));
    out << s.str();
    return rep.pass() ? 0 : 1;
}

int cmd_chop(const std::string& file, const std::string& charspec, std::uint64_t seed,
             const std::string& emit_module_path, std::ostringstream& out) {
    LieAlgebra l = parse_algebra_file(read_file(file));
    Vec chi = parse_character(l, charspec);
    auto mu = chi_to_mu(l, chi);
    ReducedAlgebra ra = reduced_algebra(l, mu);
    ModuleAction reg = regular_module(ra);
    if (!emit_module_path.empty()) {
        write_file(emit_module_path, emit_module(reg));
        out << "wrote reduced-algebra module to " << emit_module_path << "\n";
    }
    ChopResult cr = chop(reg, seed);
    out << "character chi: " << chi.str() << "\n";
    out << "central character mu (f_e(chi(e))): ";
    for (std::size_t i = 0; i < mu.size(); ++i) out << (i ? ";" : "") << mu[i].str();
    out << "\n";
    out << "reduced algebra dimension: " << ra.dim << "\n";
    out << "composition factors of the regular module:\n" << factor_table(cr);
    out << "max absolute simple dim observed: " << cr.max_abs_dim() << "\n";
    Summary s;
    s.add("command", "chop");
    s.add("character", chi.str());
    s.add("module_dim", cr.module_dim);
    s.add("factors", cr.factors_str());
    s.add("max_abs_dim", cr.max_abs_dim());
    s.add("seed", seed);
    out << s.str();
    return 0;
}

int cmd_kw1(std::uint64_t p, unsigned m, unsigned k, std::size_t budget, std::uint64_t seed,
            std::ostringstream& out) {
    LieAlgebra L = family_build(p, m, k, FamilyKind::L);
    LieAlgebra Lp = family_build(p, m, k, FamilyKind::Lprime);
    IndexReport irL = index_symbolic(L);
    IndexReport irLp = index_symbolic(Lp);

    IsoWitness w = iso_build(p, m, k);
    IsoReport iso = iso_verify(w);

    SweepReport sw = m_sweep(p, m, k, FamilyKind::L, CharacterSet{}, seed, budget);

    std::uint64_t predicted = sw.kw1_predicted_dim;
    out << "family at p = " << p << ", m = " << m << ", k = " << k << "\n";
    out << "dim L = dim L' = " << L.dim() << "\n";
    out << "ind L = " << irL.index << "   (generic coadjoint rank " << irL.generic_rank << ")\n";
    out << "ind L' = " << irLp.index << "  (generic coadjoint rank " << irLp.generic_rank << ")\n";
    out << "KW1 predicts max simple dim p^((dim-ind)/2) = " << p << "^" << sw.kw1_exponent
        << " = " << predicted << "\n";
    out << "enveloping-algebra witness U(L') -> U(L): "
        << (iso.pass() ? "pass (brackets + D0 recovery)" : "FAIL") << "\n";
    out << "sweep of the dim-" << sw.reduced_dim
        << " reduced algebras of L (all base characters + " << CharacterSet{}.random_ext_count
        << " random F_" << p << "^" << m * CharacterSet{}.ext_factor << " characters):\n";
    out << "  character (chi) | factors dim^mult(e) | max abs dim | p^2 divides all abs dims\n";
    for (const auto& row : sw.rows) {
        out << "  " << row.chi << " | ";
        for (std::size_t i = 0; i < row.factors.size(); ++i) {
            if (i) out << ", ";
            out << row.factors[i][0] << "^" << row.factors[i][1];
            if (row.factors[i][2] > 1) out << "(e=" << row.factors[i][2] << ")";
        }
        out << " | " << row.max_abs << " | " << (row.all_abs_div_p2 ? "yes" : "no") << "\n";
    }
    out << "observed max absolute simple dim: " << sw.observed_max_abs << "\n";
    out << "p^2 divides observed max: " << (sw.max_div_p2 ? "yes" : "no") << "\n";
    out << "verdict: " << sw.verdict << "\n";

    Summary s;
    s.add("command", "kw1");
    s.add("p", p);
    s.add("m", m);
    s.add("k", k);
    s.add("seed", seed);
    s.add("budget", budget);
    s.add("dim", L.dim());
    s.add("ind", irL.index);
    s.add("ind_lprime", irLp.index);
    s.add("kw1_exponent", sw.kw1_exponent);
    s.add("kw1_predicted", predicted);
    s.add("iso_witness", iso.pass());
    s.add("reduced_dim", sw.reduced_dim);
    s.add("max_abs_simple_dim", sw.observed_max_abs);
    s.add("verdict", sw.verdict);
    out << s.str();
    return 0;
}

} // namespace

CommandResult run_command(const std::vector<std::string>& argv) {
    std::ostringstream out;
    CLI::App app{"kwlie: modular Lie algebra toolkit (index, restrictedness, enveloping-algebra "
                 "isomorphism witnesses, MeatAxe sweeps)"};
    app.require_subcommand(1);

    std::string file, which = "L", emit, charspec = "ones", emit_module_path;
    std::uint64_t p = 2, seed = 1;
    unsigned m = 1, k = 3, sample = 0, ext = 8, cap = 0;
    std::size_t budget = 4096;

    auto* c_check = app.add_subcommand("check", "validate an algebra file");
    c_check->add_option("file", file, "algebra file")->required();

    auto* c_family = app.add_subcommand(
        "family",
        "build a family algebra (A, A_D, L, Lprime); A = <x_1..x_k> abelian, A_D adjoins the "
        "derivation D with D(x_i) = x_i for i <= k-2, D(x_{k-1}) = x_k, D(x_k) = 0, "
        "L = (A_D)_{D0} with basis (x_1..x_k, D0, D), L' = (A_D)_{D'} with D' = ad(D)^p");
    c_family->add_option("--p", p, "characteristic (prime)")->required();
    c_family->add_option("--m", m, "field extension degree (default 1)");
    c_family->add_option("--k", k, "family parameter k >= 3")->required();
    c_family->add_option("--which", which, "A, A_D, L or Lprime")->required();
    c_family->add_option("--emit", emit, "write the algebra file here instead of stdout");

    auto* c_index = app.add_subcommand("index", "exact coadjoint index of an algebra file");
    c_index->add_option("file", file, "algebra file")->required();
    c_index->add_option("--sample", sample, "also sample N random characters as a cross-check");
    c_index->add_option("--ext", ext, "extension factor for sampling (default 8)");
    c_index->add_option("--seed", seed, "sampling seed (default 1)");

    auto* c_closure = app.add_subcommand("closure", "restricted closure of ad(L) in Der(L)");
    c_closure->add_option("file", file, "algebra file")->required();

    auto* c_restr = app.add_subcommand("restrictable", "is ad(L) closed under p-th powers?");
    c_restr->add_option("file", file, "algebra file")->required();

    auto* c_iso = app.add_subcommand("iso-check", "build and verify the U(L') -> U(L) witness");
    c_iso->add_option("--p", p, "characteristic (prime)")->required();
    c_iso->add_option("--m", m, "field extension degree (default 1)");
    c_iso->add_option("--k", k, "family parameter k >= 3")->required();
    c_iso->add_option("--cap", cap, "PBW degree cap (default p+2)");

    auto* c_chop = app.add_subcommand("chop", "chop the reduced regular module at a character");
    c_chop->add_option("file", file, "algebra file")->required();
    c_chop->add_option("--character", charspec,
                       "';'-separated chi values in basis order, or 'ones'/'zeros'")
        ->required();
    c_chop->add_option("--seed", seed, "chop seed (default 1)");
    c_chop->add_option("--emit-module", emit_module_path,
                       "also write the reduced algebra's generator matrices");

    auto* c_kw1 = app.add_subcommand("kw1", "full pipeline: family, indexes, iso witness, sweep");
    c_kw1->add_option("--p", p, "characteristic (prime)")->required();
    c_kw1->add_option("--m", m, "field extension degree (default 1)");
    c_kw1->add_option("--k", k, "family parameter k >= 3")->required();
    c_kw1->add_option("--budget", budget, "reduced-dimension budget (default 4096)");
    c_kw1->add_option("--seed", seed, "sweep seed (default 1)");

    std::vector<const char*> cargv;
    cargv.push_back("kwlie");
    for (const auto& a : argv) cargv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
        int code = 0;
        if (*c_check) code = cmd_check(file, out);
        else if (*c_family) code = cmd_family(p, m, k, which, emit, out);
        else if (*c_index) code = cmd_index(file, sample, ext, seed, out);
        else if (*c_closure) code = cmd_closure(file, out);
        else if (*c_restr) code = cmd_restrictable(file, out);
        else if (*c_iso) code = cmd_iso_check(p, m, k, cap, out);
        else if (*c_chop) code = cmd_chop(file, charspec, seed, emit_module_path, out);
        else if (*c_kw1) code = cmd_kw1(p, m, k, budget, seed, out);
        return {code, out.str()};
    } catch (const CLI::CallForHelp&) {
        return {0, app.help()};
    } catch (const CLI::ParseError& e) {
        return {2, "error: Usage: " + std::string(e.what()) + "\n"};
    } catch (const error& e) {
        int code = e.code() == errc::budget_exceeded ? 2 : 1;
        return {code, "error: " + std::string(e.what()) + "\n"};
    }
}

} // namespace kwlie
