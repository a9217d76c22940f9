#include "kwlie/index.hpp"

#include <sstream>

namespace kwlie {

Matrix coadjoint_form(const LieAlgebra& l, const Vec& chi) {
    if (chi.size() != l.dim()) raise(errc::shape_mismatch, "linear form size");
    const Field& cf = chi.fld;
    Embedding emb(l.field(), cf);
    Matrix b(cf, l.dim(), l.dim());
    for (std::size_t i = 0; i < l.dim(); ++i) {
        for (std::size_t j = i + 1; j < l.dim(); ++j) {
            Vec br = l.bracket_basis(i, j);
            std::uint64_t acc = 0;
            for (std::size_t t = 0; t < l.dim(); ++t)
                if (br.a[t]) acc = cf.add(acc, cf.mul(emb.apply(br.a[t]), chi.a[t]));
            b.set_raw(i, j, acc);
            b.set_raw(j, i, cf.neg(acc));
        }
    }
    return b;
}

std::size_t stabilizer_dim(const LieAlgebra& l, const Vec& chi) {
    return rank_kernel(coadjoint_form(l, chi)).kernel.rows();
}

LinearPolyMatrix generic_coadjoint(const LieAlgebra& l) {
    LinearPolyMatrix m(l.field(), l.dim(), l.dim(), static_cast<unsigned>(l.dim()));
    for (std::size_t i = 0; i < l.dim(); ++i) {
        for (std::size_t j = i + 1; j < l.dim(); ++j) {
            Vec br = l.bracket_basis(i, j);
            for (std::size_t t = 0; t < l.dim(); ++t) {
                if (!br.a[t]) continue;
                m.set_coeff(i, j, static_cast<unsigned>(t), br.a[t]);
                m.set_coeff(j, i, static_cast<unsigned>(t), l.field().neg(br.a[t]));
            }
        }
    }
    return m;
}

std::string IndexReport::to_kv() const {
    std::ostringstream os;
    os << "dim: " << dim << "\n";
    os << "ind: " << index << "\n";
    os << "generic_rank: " << generic_rank << "\n";
    os << "kw1_exponent: " << kw1_exponent << "\n";
    if (witness_chi) os << "witness_chi: " << witness_chi->str() << "\n";
    return os.str();
}

IndexReport index_symbolic(const LieAlgebra& l) {
    IndexReport rep;
    rep.dim = l.dim();
    rep.generic_rank = symbolic_rank(generic_coadjoint(l));
    rep.index = rep.dim - rep.generic_rank;
    if (rep.generic_rank % 2 != 0)
        raise(errc::parity_violation,
              "dim - ind is odd (generic rank " + std::to_string(rep.generic_rank) + ")");
    rep.kw1_exponent = static_cast<unsigned>(rep.generic_rank / 2);
    return rep;
}

SampledIndex index_sampled(const LieAlgebra& l, unsigned trials, unsigned ext_factor,
                           std::uint64_t seed) {
    if (trials < 1) raise(errc::shape_mismatch, "trials must be >= 1");
    Field target = ext_factor <= 1 ? l.field()
                                   : Field::make(l.field().p(), l.field().m() * ext_factor);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, target.order() - 1);
    SampledIndex best;
    best.min_stabilizer_dim = l.dim() + 1;
    for (unsigned t = 0; t < trials; ++t) {
        Vec chi(target, l.dim());
        for (auto& x : chi.a) x = dist(rng);
        std::size_t s = stabilizer_dim(l, chi);
        if (s < best.min_stabilizer_dim) {
            best.min_stabilizer_dim = s;
            best.witness_chi = chi;
        }
    }
    return best;
}

unsigned kw1_predicted(const LieAlgebra& l) { return index_symbolic(l).kw1_exponent; }

} // namespace kwlie
