#include "bt/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bt/errors.hpp"

namespace bt {

namespace {

using nlohmann::json;

const json& need(const json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string("missing field '") + key + "' in " + where);
    return j.at(key);
}

int need_int(const json& j, const char* key, const char* where) {
    const json& v = need(j, key, where);
    if (!v.is_number_integer())
        throw SchemaError(std::string("field '") + key + "' in " + where +
                          " must be an integer");
    return v.get<int>();
}

Rat parse_rat(const json& j, const char* where) {
    if (j.is_number_integer())
        return Rat(j.get<int64_t>());
    if (j.is_string())
        return Rat::parse(j.get<std::string>());
    throw SchemaError(std::string("expected a rational ('p/q' or integer) in ") + where);
}

// a Laurent series entry: an integer constant, or [[c0, c1, ...], valuation]
Laurent parse_laurent(const json& j, const char* where) {
    if (j.is_number_integer()) {
        int v = j.get<int>();
        return v == 0 ? Laurent() : Laurent::constant(v);
    }
    if (j.is_array() && j.size() == 2 && j[0].is_array() && j[1].is_number_integer()) {
        std::vector<int> coeffs;
        for (const json& c : j[0]) {
            if (!c.is_number_integer())
                throw SchemaError(std::string("non-integer coefficient in ") + where);
            coeffs.push_back(c.get<int>());
        }
        int val = j[1].get<int>();
        // normalize away leading zeros so the stored valuation is exact
        while (!coeffs.empty() && coeffs.front() % field_config().q == 0) {
            coeffs.erase(coeffs.begin());
            ++val;
        }
        while (!coeffs.empty() && coeffs.back() % field_config().q == 0)
            coeffs.pop_back();
        if (coeffs.empty())
            return Laurent();
        return Laurent::from_coeffs(val, coeffs);
    }
    throw SchemaError(std::string("expected a Laurent entry in ") + where);
}

Matrix parse_matrix(const json& j, int rows, int cols, const char* where) {
    if (!j.is_array() || (int)j.size() != rows)
        throw SchemaError(std::string("expected a ") + std::to_string(rows) + "x" +
                          std::to_string(cols) + " matrix in " + where);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || (int)j[i].size() != cols)
            throw SchemaError(std::string("ragged matrix row in ") + where);
        for (int k = 0; k < cols; ++k)
            m.at(i, k) = parse_laurent(j[i][k], where);
    }
    return m;
}

Matrix parse_e_vectors(const json& j, int n, const char* where) {
    if (j.is_object() && j.contains("columns")) {
        const json& cols = j.at("columns");
        if (!cols.is_array() || cols.empty())
            throw SchemaError(std::string("empty column list in ") + where);
        Matrix m(n, (int)cols.size());
        for (size_t k = 0; k < cols.size(); ++k) {
            int c = cols[k].get<int>();
            if (c < 0 || c >= n)
                throw SchemaError(std::string("column index out of range in ") + where);
            m.at(c, (int)k) = Laurent::one();
        }
        return m;
    }
    if (j.is_array())
        return parse_matrix(j, n, (int)j[0].size(), where);
    throw SchemaError(std::string("expected e_vectors (matrix or columns) in ") + where);
}

SelfDualSpec parse_self_dual(const json& j, const char* where) {
    SelfDualSpec sd;
    std::string mode = need(j, "mode", where).get<std::string>();
    if (mode == "mirror") {
        sd.mode = SelfDualSpec::mirror;
        for (const json& p : need(j, "pairs", where)) {
            if (!p.is_array() || p.size() != 2)
                throw SchemaError(std::string("bad slot pair in ") + where);
            sd.pairs.push_back({p[0].get<int>(), p[1].get<int>()});
        }
        if (j.contains("fixed"))
            for (const json& f : j.at("fixed"))
                sd.fixed.push_back({f[0].get<int>(), parse_rat(f[1], where)});
    } else if (mode == "values") {
        sd.mode = SelfDualSpec::values;
        for (const json& row : need(j, "values", where)) {
            std::vector<Rat> vals;
            for (const json& v : row)
                vals.push_back(parse_rat(v, where));
            sd.value_list.push_back(std::move(vals));
        }
    } else {
        throw SchemaError(std::string("unknown self_dual mode '") + mode + "' in " + where);
    }
    return sd;
}

Scenario parse_scenario(const json& j) {
    Scenario sc;
    sc.id = need(j, "id", "scenario").get<std::string>();
    int version = need_int(j, "version", "scenario");
    if (version != 1)
        throw SchemaError("unsupported scenario version " + std::to_string(version));

    const json& field = need(j, "field", "scenario");
    sc.q = need_int(field, "q", "field");
    sc.window = need_int(field, "precision", "field");
    if (sc.q < 3 || sc.window < 4)
        throw SchemaError("field parameters out of range");
    set_field(sc.q, sc.window);

    const json& sp = need(j, "space", "scenario");
    int n = need_int(sp, "n", "space");
    int r = need_int(sp, "r", "space");
    int epsilon = need_int(sp, "epsilon", "space");
    std::vector<Laurent> aniso;
    for (const json& a : need(sp, "aniso", "space"))
        aniso.push_back(parse_laurent(a, "space.aniso"));
    sc.space = make_witt_space(n, r, epsilon, aniso);

    const json& beta_j = need(j, "beta", "scenario");
    if (beta_j.is_string() && beta_j.get<std::string>() == "zero")
        sc.beta = Matrix(n, n);
    else
        sc.beta = parse_matrix(beta_j, n, n, "beta");

    std::vector<ComponentSpec> specs;
    for (const json& cj : need(j, "components", "scenario")) {
        ComponentSpec s;
        s.index = need_int(cj, "index", "component");
        std::string kind = need(cj, "kind", "component").get<std::string>();
        if (kind == "swapped")
            s.is_plus = true;
        else if (kind == "o2")
            s.o2_type = true;
        else if (kind != "fixed")
            throw SchemaError("unknown component kind '" + kind + "'");
        for (const json& c : need(cj, "min_poly", "component"))
            s.min_poly.push_back(parse_laurent(c, "component.min_poly"));
        if (cj.contains("e"))
            s.e = cj.at("e").get<int>();
        if (cj.contains("f"))
            s.f = cj.at("f").get<int>();
        s.e_vectors = parse_e_vectors(need(cj, "e_vectors", "component"), n,
                                      "component.e_vectors");
        auto ambient = [&](const char* key) -> std::optional<Matrix> {
            if (!cj.contains(key))
                return std::nullopt;
            const json& v = cj.at(key);
            if (v.is_string() && v.get<std::string>() == "beta")
                return sc.beta;
            return parse_matrix(v, n, n, key);
        };
        s.uniformizer = ambient("uniformizer");
        s.theta = ambient("theta");
        if (cj.contains("self_dual"))
            s.sd = parse_self_dual(cj.at("self_dual"), "component.self_dual");
        specs.push_back(std::move(s));
    }

    try {
        sc.datum = validate_beta(sc.space, sc.beta, specs);
    } catch (const PrecisionExhausted&) {
        throw;
    } catch (const Error& e) {
        throw ValidationError("scenario '" + sc.id + "': " + e.what());
    }

    if (j.contains("grid")) {
        sc.grid.denom = need_int(j.at("grid"), "denom", "grid");
        sc.grid.radius = need_int(j.at("grid"), "radius", "grid");
        if (sc.grid.denom < 1 || sc.grid.radius < 0)
            throw SchemaError("grid parameters out of range");
    }

    if (j.contains("default_point")) {
        for (const json& row : j.at("default_point")) {
            std::vector<Rat> params;
            for (const json& v : row)
                params.push_back(parse_rat(v, "default_point"));
            sc.default_point.push_back(std::move(params));
        }
        if (sc.default_point.size() != sc.datum.components.size())
            throw SchemaError("default_point length does not match the components");
    }
    return sc;
}

} // namespace

Scenario parse_scenario_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw SchemaError("not valid JSON");
    return parse_scenario(j);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

std::vector<std::vector<Rat>> random_grid_params(const BetaDatum& datum,
                                                 const GridSpec& grid,
                                                 std::mt19937_64& rng) {
    auto grid_value = [&] {
        int64_t span = 2 * (int64_t)grid.radius + 1;
        return Rat((int64_t)(rng() % span) - grid.radius, grid.denom);
    };
    std::vector<std::vector<Rat>> out;
    for (const ComponentField& c : datum.components) {
        std::vector<Rat> params(c.m, Rat(0));
        if (c.sd.mode == SelfDualSpec::values) {
            params = c.sd.value_list[rng() % c.sd.value_list.size()];
        } else if (c.sd.mode == SelfDualSpec::mirror) {
            std::vector<bool> set(c.m, false);
            for (const auto& [slot, v] : c.sd.fixed) {
                params[slot] = v;
                set[slot] = true;
            }
            for (const auto& [a, b] : c.sd.pairs) {
                if (!set[a]) {
                    params[a] = (a == b) ? Rat(0) : grid_value();
                    set[a] = true;
                }
                if (!set[b]) {
                    params[b] = -params[a];
                    set[b] = true;
                }
            }
            for (int k = 0; k < c.m; ++k)
                if (!set[k])
                    params[k] = grid_value();
        } else {
            for (int k = 0; k < c.m; ++k)
                params[k] = grid_value();
        }
        out.push_back(std::move(params));
    }
    return out;
}

ComponentTuple tuple_from_params(const BetaDatum& datum,
                                 const std::vector<std::vector<Rat>>& params) {
    if (params.size() != datum.components.size())
        throw ValidationError("one parameter vector per component is required");
    ComponentTuple x;
    for (size_t k = 0; k < params.size(); ++k)
        x.push_back(component_point(datum.components[k], params[k]));
    return x;
}

} // namespace bt
