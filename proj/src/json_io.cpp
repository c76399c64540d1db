#include "isoeq/json_io.hpp"

#include <algorithm>
#include <cstdint>

namespace isoeq::jsonio {
namespace {

const json& expect_member(const json& j, const char* key, const std::string& path) {
    require(j.is_object(), Errc::Malformed, path + ": expected an object");
    const auto it = j.find(key);
    require(it != j.end(), Errc::Malformed, path + ": missing \"" + key + "\"");
    return *it;
}

long long expect_int(const json& j, const std::string& path) {
    require(j.is_number_integer(), Errc::Malformed, path + ": expected an integer");
    return j.get<long long>();
}

const json& expect_array(const json& j, const std::string& path) {
    require(j.is_array(), Errc::Malformed, path + ": expected an array");
    return j;
}

Vec vec_from_json(const json& j, const Ambient& amb, const std::string& path) {
    expect_array(j, path);
    require(static_cast<int>(j.size()) == amb.dim, Errc::Malformed,
            path + ": expected " + std::to_string(amb.dim) + " coordinates, got " +
                std::to_string(j.size()));
    Vec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        const long long x = expect_int(j[i], p);
        require(x >= 0 && x < amb.field.q(), Errc::Malformed,
                p + ": index " + std::to_string(x) + " out of range for q = " +
                    std::to_string(amb.field.q()));
        v.push_back(static_cast<Elem>(x));
    }
    return v;
}

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (Elem x : v) a.push_back(static_cast<int>(x));
    return a;
}

json witness_to_json(const Classification& cls) {
    json w;
    if (const auto* a = std::get_if<TypeASpec>(&cls.witness)) {
        w = json{{"S", to_json(a->S)}, {"a", vec_to_json(a->a)}, {"b", vec_to_json(a->b)}};
    } else if (const auto* b = std::get_if<TypeBSpec>(&cls.witness)) {
        w = json{{"S", to_json(b->S)},
                 {"a", vec_to_json(b->a)},
                 {"b", vec_to_json(b->b)},
                 {"c", vec_to_json(b->c)}};
    } else if (const auto* c = std::get_if<TypeCSpec>(&cls.witness)) {
        w = json{{"S", to_json(c->S)},
                 {"a", vec_to_json(c->a)},
                 {"b", vec_to_json(c->b)},
                 {"c", vec_to_json(c->c)},
                 {"d", vec_to_json(c->d)}};
    } else {
        w = nullptr;
    }
    return w;
}

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "unknown";
}

}  // namespace

json to_json(const Field& f) {
    json mod = json::array();
    for (int c : f.modulus()) mod.push_back(c);
    return json{{"p", f.p()}, {"e", f.e()}, {"modulus", std::move(mod)}};
}

json to_json(const Subspace& s) {
    json basis = json::array();
    for (int i = 0; i < s.dim(); ++i) basis.push_back(vec_to_json(s.row(i)));
    return json{{"ambient_dim", s.ambient_dim()}, {"basis", std::move(basis)}};
}

json to_json(const SolutionPair& p) {
    json u = json::array();
    json v = json::array();
    for (const Subspace& s : p.U.spaces()) u.push_back(to_json(s));
    for (const Subspace& s : p.V.spaces()) v.push_back(to_json(s));
    return json{{"field", to_json(p.ambient().field)},
                {"ambient_dim", p.ambient().dim},
                {"U", std::move(u)},
                {"V", std::move(v)}};
}

json to_json(const DimensionProfile& prof) {
    return json{{"n", prof.n},           {"max_v", prof.max_v}, {"max_u", prof.max_u},
                {"X", prof.X},           {"Y", prof.Y},         {"dims_v", prof.dims_v},
                {"dims_u", prof.dims_u}};
}

json to_json(const StructuralReport& rep) {
    json items = json::array();
    for (const CheckItem& it : rep.items) {
        json e{{"name", it.name}, {"status", status_name(it.status)}};
        if (!it.detail.empty()) e["detail"] = it.detail;
        items.push_back(std::move(e));
    }
    return json{{"equal_maxima", rep.equal_maxima}, {"passed", rep.passed()}, {"checks", items}};
}

json to_json(const Classification& cls) {
    return json{{"kind", kind_name(cls.kind)}, {"witness", witness_to_json(cls)}};
}

json search_report_to_json(const SearchReport& rep, const SearchConfig& cfg) {
    json classes = json::array();
    for (std::size_t i = 0; i < rep.solutions.size(); ++i) {
        json entry{{"pair", to_json(rep.solutions[i])}};
        if (rep.classifications[i].has_value()) {
            entry["classification"] = to_json(*rep.classifications[i]);
        } else {
            entry["classification"] = nullptr;
        }
        entry["digest"] = pair_digest(rep.solutions[i]);
        classes.push_back(std::move(entry));
    }
    return json{{"config",
                 {{"field", to_json(cfg.field)},
                  {"dim", cfg.dim},
                  {"m", cfg.m},
                  {"jobs", cfg.jobs},
                  {"pruning",
                   {{"value_at_zero", cfg.pruning.value_at_zero},
                    {"dim_multiset", cfg.pruning.dim_multiset},
                    {"structure_constraints", cfg.pruning.structure_constraints}}}}},
                {"classes", std::move(classes)},
                {"counts",
                 {{"tuples_scanned", rep.counts.tuples_scanned},
                  {"pairs_tested", rep.counts.pairs_tested},
                  {"classes_found", rep.counts.classes_found}}},
                {"elapsed_seconds", rep.elapsed_seconds}};
}

Field field_from_json(const json& j) {
    const long long p = expect_int(expect_member(j, "p", "field"), "field.p");
    const long long e = expect_int(expect_member(j, "e", "field"), "field.e");
    require(p >= 2 && p <= 1 << 16, Errc::Malformed, "field.p: out of range");
    require(e >= 1 && e <= 16, Errc::Malformed, "field.e: out of range");
    Field f = Field::make(static_cast<int>(p), static_cast<int>(e));
    if (j.contains("modulus") && !j["modulus"].is_null()) {
        const json& mod = expect_array(j["modulus"], "field.modulus");
        std::vector<int> coeffs;
        for (std::size_t i = 0; i < mod.size(); ++i) {
            coeffs.push_back(static_cast<int>(
                expect_int(mod[i], "field.modulus[" + std::to_string(i) + "]")));
        }
        require(coeffs == f.modulus(), Errc::Malformed,
                "field.modulus: does not match the canonical modulus of GF(" + std::to_string(p) +
                    "^" + std::to_string(e) + ")");
    }
    return f;
}

Subspace subspace_from_json(const json& j, const Ambient& amb, const std::string& path) {
    const long long d = expect_int(expect_member(j, "ambient_dim", path), path + ".ambient_dim");
    require(d == amb.dim, Errc::Malformed,
            path + ".ambient_dim: expected " + std::to_string(amb.dim) + ", got " + std::to_string(d));
    const json& basis = expect_array(expect_member(j, "basis", path), path + ".basis");
    std::vector<Vec> rows;
    rows.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        rows.push_back(vec_from_json(basis[i], amb, path + ".basis[" + std::to_string(i) + "]"));
    }
    try {
        return Subspace::from_rref(amb, rows);
    } catch (const Error& err) {
        if (err.code() == Errc::NotCanonical) {
            raise(Errc::NotCanonical, path + ".basis: " + err.what());
        }
        throw;
    }
}

SolutionPair pair_from_json(const json& j) {
    Field f = field_from_json(expect_member(j, "field", "pair"));
    const long long d = expect_int(expect_member(j, "ambient_dim", "pair"), "ambient_dim");
    require(d >= 1 && d <= 64, Errc::Malformed, "ambient_dim: out of range");
    const Ambient amb = make_ambient(std::move(f), static_cast<int>(d));

    const auto tuple_from = [&](const char* key) {
        const json& arr = expect_array(expect_member(j, key, "pair"), key);
        require(!arr.empty(), Errc::Malformed, std::string(key) + ": must be nonempty");
        std::vector<Subspace> spaces;
        spaces.reserve(arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i) {
            spaces.push_back(
                subspace_from_json(arr[i], amb, std::string(key) + "[" + std::to_string(i) + "]"));
        }
        return SpaceTuple(std::move(spaces));
    };

    SpaceTuple u = tuple_from("U");
    SpaceTuple v = tuple_from("V");
    require(u.size() == v.size(), Errc::Malformed,
            "U and V have different lengths (" + std::to_string(u.size()) + " vs " +
                std::to_string(v.size()) + ")");
    return SolutionPair(std::move(u), std::move(v));
}

json verification_report(const SolutionPair& p, const VerifyOptions& opts) {
    const bool solution = verify_equation(p, opts);
    const Subspace joint = sum_spaces(p.U.join(), p.V.join());
    const Subspace meet = common_meet(p);
    return json{{"solution", solution},
                {"trivial", solution && tuples_equivalent(p.U, p.V)},
                {"join_dim", joint.dim()},
                {"meet_dim", meet.dim()}};
}

std::string pair_digest(const SolutionPair& p) {
    const auto flatten = [](const std::vector<std::vector<Elem>>& encs) {
        std::vector<std::uint32_t> out;
        for (const auto& e : encs) {
            out.insert(out.end(), e.begin(), e.end());
            out.push_back(0x10000);
        }
        return out;
    };
    std::vector<std::uint32_t> a = flatten(p.U.sorted_encodings());
    std::vector<std::uint32_t> b = flatten(p.V.sorted_encodings());
    if (b < a) std::swap(a, b);

    std::uint64_t h = 0xcbf29ce484222325ull;
    const auto mix = [&h](std::uint32_t word) {
        for (int s = 0; s < 32; s += 8) {
            h ^= (word >> s) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(static_cast<std::uint32_t>(p.ambient().field.p()));
    mix(static_cast<std::uint32_t>(p.ambient().field.e()));
    mix(static_cast<std::uint32_t>(p.ambient().dim));
    for (std::uint32_t w : a) mix(w);
    mix(0x20000);
    for (std::uint32_t w : b) mix(w);

    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace isoeq::jsonio
