#include "kwlie/algfile.hpp"

#include <json.hpp>

#include <algorithm>

namespace kwlie {

using nlohmann::json;

LieAlgebra parse_algebra_file(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        raise(errc::parse_error, e.what());
    }
    try {
        if (!j.is_object()) raise(errc::parse_error, "top level must be an object");
        if (!j.contains("field") || !j.contains("basis") || !j.contains("brackets"))
            raise(errc::parse_error, "need keys 'field', 'basis', 'brackets'");

        const json& jf = j["field"];
        if (!jf.contains("p")) raise(errc::parse_error, "field block needs 'p'");
        std::uint64_t p = jf["p"].get<std::uint64_t>();
        unsigned m = jf.contains("m") ? jf["m"].get<unsigned>() : 1;
        std::optional<std::vector<std::uint64_t>> mod;
        if (jf.contains("modulus") && !jf["modulus"].is_null())
            mod = jf["modulus"].get<std::vector<std::uint64_t>>();
        Field F = Field::make(p, m, mod);

        std::vector<std::string> names = j["basis"].get<std::vector<std::string>>();
        auto index_of = [&](const std::string& n) -> std::size_t {
            auto it = std::find(names.begin(), names.end(), n);
            if (it == names.end())
                raise(errc::parse_error, "unknown basis name '" + n + "' in a bracket");
            return static_cast<std::size_t>(it - names.begin());
        };

        LieAlgebra::Table table;
        for (const json& jb : j["brackets"]) {
            if (!jb.contains("left") || !jb.contains("right") || !jb.contains("coeffs"))
                raise(errc::parse_error, "bracket entries need 'left', 'right', 'coeffs'");
            std::size_t li = index_of(jb["left"].get<std::string>());
            std::size_t ri = index_of(jb["right"].get<std::string>());
            if (table.count({li, ri}))
                raise(errc::parse_error, "duplicate bracket for (" + names[li] + ", " + names[ri] +
                                             ")");
            std::vector<BracketTerm> terms;
            for (auto it = jb["coeffs"].begin(); it != jb["coeffs"].end(); ++it) {
                std::size_t ti = index_of(it.key());
                std::uint64_t c = F.parse(it.value().get<std::string>());
                if (c) terms.push_back({ti, c});
            }
            table[{li, ri}] = std::move(terms);
        }
        LieAlgebra l = LieAlgebra::from_table(F, std::move(names), std::move(table));
        ValidationReport rep = l.validate();
        if (!rep.ok) raise(errc::validation_error, rep.message);
        return l;
    } catch (const json::exception& e) {
        raise(errc::parse_error, e.what());
    }
}

std::string emit_algebra_file(const LieAlgebra& l) {
    json j;
    json jf;
    jf["p"] = l.field().p();
    jf["m"] = l.field().m();
    if (l.field().m() > 1) jf["modulus"] = l.field().modulus();
    j["field"] = jf;
    j["basis"] = l.names();
    json jb = json::array();
    for (const auto& [ij, terms] : l.canonical_table()) {
        json e;
        e["left"] = l.name(ij.first);
        e["right"] = l.name(ij.second);
        json coeffs = json::object();
        for (const auto& t : terms) coeffs[l.name(t.target)] = l.field().to_string(t.coeff);
        e["coeffs"] = coeffs;
        jb.push_back(e);
    }
    j["brackets"] = jb;
    return j.dump(2) + "\n";
}

} // namespace kwlie
