#include "algd/model.hpp"

#include <fstream>
#include <sstream>

#include "algd/expr.hpp"
#include <json.hpp>

namespace algd {

namespace {

using nlohmann::json;

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

ScalarField compile_entry(const std::string& field, const std::string& src, const VarSpec& vars) {
    try {
        return compile_str(src, vars);
    } catch (const ParseError& e) {
        throw SchemaError(field, std::string("expression '") + src + "': " + e.what());
    }
}

std::vector<ScalarField> compile_list(const std::string& field, const json& j, int expected,
                                      const VarSpec& vars) {
    if (!j.is_array())
        throw SchemaError(field, "expected a list of expression strings");
    if (static_cast<int>(j.size()) != expected)
        throw SchemaError(field, "expected " + std::to_string(expected) + " expressions, got " +
                                     std::to_string(j.size()));
    std::vector<ScalarField> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_string()) throw SchemaError(field, "entries must be strings");
        out.push_back(compile_entry(field, e.get<std::string>(), vars));
    }
    return out;
}

int require_int(const json& doc, const char* key, int lo) {
    if (!doc.contains(key)) throw SchemaError(key, "missing");
    const auto& v = doc.at(key);
    if (!v.is_number_integer()) throw SchemaError(key, "expected an integer");
    int n = v.get<int>();
    if (n < lo) throw SchemaError(key, "must be >= " + std::to_string(lo));
    return n;
}

} // namespace

const Bivector& Model::bivector_named(const std::string& nm) const {
    auto it = bivectors.find(nm);
    if (it == bivectors.end()) throw ConfigError("model: no bivector named '" + nm + "'");
    return it->second;
}

Model load_model(const std::string& text, const std::string& name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("(document)", e.what());
    }
    if (!doc.is_object()) throw SchemaError("(document)", "top level must be an object");

    Model m;
    m.name = name;
    m.base_dim = require_int(doc, "base_dim", 1);
    m.fiber_dim = require_int(doc, "fiber_dim", 0);
    const int n = m.base_dim;
    const int k = m.fiber_dim;
    const VarSpec base_vars{n, 0};
    const VarSpec pair_vars{2 * n, 0};

    if (doc.contains("anchor") || doc.contains("structure")) {
        if (k < 1) throw SchemaError("fiber_dim", "algebroid data requires fiber_dim >= 1");
        std::vector<ChartVectorField> anchor;
        if (doc.contains("anchor")) {
            const auto& ja = doc.at("anchor");
            if (!ja.is_array() || static_cast<int>(ja.size()) != k)
                throw SchemaError("anchor", "expected fiber_dim rows");
            for (int a = 0; a < k; ++a)
                anchor.push_back(ChartVectorField(
                    compile_list("anchor[" + std::to_string(a) + "]", ja.at(uz(a)), n, base_vars)));
        } else {
            anchor.assign(uz(k), ChartVectorField::zero(n));
        }

        std::vector<std::vector<ScalarField>> cs(uz(k * (k - 1) / 2),
                                                 std::vector<ScalarField>(uz(k), zero_field(n)));
        if (doc.contains("structure")) {
            const auto& js = doc.at("structure");
            if (!js.is_array()) throw SchemaError("structure", "expected a list of entries");
            for (const auto& e : js) {
                if (!e.is_object() || !e.contains("a") || !e.contains("b") || !e.contains("c") ||
                    !e.contains("expr"))
                    throw SchemaError("structure", "entries need keys a, b, c, expr");
                int a = e.at("a").get<int>();
                int b = e.at("b").get<int>();
                int c = e.at("c").get<int>();
                if (a < 0 || b < 0 || c < 0 || a >= k || b >= k || c >= k)
                    throw SchemaError("structure", "index out of range");
                if (a >= b)
                    throw SchemaError("structure",
                                      "entries must have a < b (antisymmetry is structural)");
                std::size_t idx = uz(a * (2 * k - a - 1) / 2 + (b - a - 1));
                cs[idx][uz(c)] =
                    compile_entry("structure", e.at("expr").get<std::string>(), base_vars);
            }
        }
        m.algebroid = LieAlgebroid(n, k, std::move(anchor), std::move(cs));
    }

    auto load_named = [&](const char* key, int count, const VarSpec& vars, auto store) {
        if (!doc.contains(key)) return;
        const auto& sec = doc.at(key);
        if (!sec.is_object()) throw SchemaError(key, "expected an object of named lists");
        for (const auto& [nm, val] : sec.items())
            store(nm, compile_list(std::string(key) + "." + nm, val, count, vars));
    };

    load_named("sections", k, base_vars,
               [&](const std::string& nm, std::vector<ScalarField> c) {
                   m.sections.emplace(nm, SectionA(std::move(c)));
               });
    load_named("dual_sections", k, base_vars,
               [&](const std::string& nm, std::vector<ScalarField> c) {
                   m.dual_sections.emplace(nm, DualSection(std::move(c)));
               });
    load_named("vector_fields", n, base_vars,
               [&](const std::string& nm, std::vector<ScalarField> c) {
                   m.vector_fields.emplace(nm, ChartVectorField(std::move(c)));
               });
    load_named("one_forms", n, base_vars,
               [&](const std::string& nm, std::vector<ScalarField> c) {
                   m.one_forms.emplace(nm, ChartOneForm(std::move(c)));
               });
    load_named("bivectors", n * (n - 1) / 2, base_vars,
               [&](const std::string& nm, std::vector<ScalarField> c) {
                   m.bivectors.emplace(nm, Bivector(n, std::move(c)));
               });
    load_named("groupoid_fields", 2 * n, pair_vars,
               [&](const std::string& nm, std::vector<ScalarField> c) {
                   std::vector<ScalarField> f(c.begin(), c.begin() + n);
                   std::vector<ScalarField> s(c.begin() + n, c.end());
                   m.groupoid_fields.emplace(nm, GroupoidField(n, std::move(f), std::move(s)));
               });

    if (doc.contains("poisson_pair")) {
        const auto& pp = doc.at("poisson_pair");
        if (!pp.is_object() || !pp.contains("bivector"))
            throw SchemaError("poisson_pair", "expected an object with a 'bivector' key");
        Model::PoissonPairDecl decl;
        decl.bivector = pp.at("bivector").get<std::string>();
        if (m.bivectors.find(decl.bivector) == m.bivectors.end())
            throw SchemaError("poisson_pair.bivector",
                              "no bivector named '" + decl.bivector + "'");
        if (pp.contains("star_one_forms")) {
            const auto& sf = pp.at("star_one_forms");
            if (!sf.is_object()) throw SchemaError("poisson_pair.star_one_forms", "expected object");
            for (const auto& [nm, val] : sf.items()) {
                auto comps = compile_list("poisson_pair.star_one_forms." + nm, val, 2 * n, pair_vars);
                std::vector<ScalarField> f(comps.begin(), comps.begin() + n);
                std::vector<ScalarField> s(comps.begin() + n, comps.end());
                decl.star_one_forms.emplace(nm, GroupoidOneForm(n, std::move(f), std::move(s)));
            }
        }
        m.poisson_pair = std::move(decl);
    }

    return m;
}

Model load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string name = path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos)
        name = name.substr(slash + 1);
    if (auto dot = name.find_last_of('.'); dot != std::string::npos) name = name.substr(0, dot);
    return load_model(ss.str(), name);
}

} // namespace algd
