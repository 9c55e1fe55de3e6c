#include "mmentropy/map_io.hpp"

#include "mmentropy/families.hpp"

#include <fstream>
#include <stdexcept>

namespace mme {

namespace {

big_rat rat_from_json(const nlohmann::json& v) {
    if (v.is_string()) return rat_from_string(v.get<std::string>());
    if (v.is_number_integer()) return big_rat(v.get<long long>());
    if (v.is_number_float()) return rat_from_double(v.get<double>());
    throw std::invalid_argument("expected a number or numeric string");
}

double require_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key))
        throw std::invalid_argument(std::string("missing parameter: ") + key);
    const auto& v = j.at(key);
    if (v.is_string()) return static_cast<double>(rat_from_string(v.get<std::string>()));
    if (!v.is_number())
        throw std::invalid_argument(std::string("parameter is not numeric: ") + key);
    return v.get<double>();
}

MapModel table_from_json(const nlohmann::json& j) {
    const auto& jb = j.at("breakpoints");
    const auto& jv = j.at("values");
    if (!jb.is_array() || !jv.is_array())
        throw std::invalid_argument("breakpoints and values must be arrays");
    std::vector<big_rat> bp, vv;
    for (const auto& e : jb) bp.push_back(rat_from_json(e));
    for (const auto& e : jv) vv.push_back(rat_from_json(e));
    std::string name = j.value("name", std::string("pl"));
    return make_piecewise_linear(std::move(bp), std::move(vv), std::move(name));
}

}  // namespace

MapModel map_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("map description must be an object");
    if (!j.contains("family")) {
        if (j.contains("breakpoints")) return table_from_json(j);
        throw std::invalid_argument("map description needs a family or a table");
    }
    const std::string family = j.at("family").get<std::string>();
    if (family == "gaussian")
        return make_gaussian(require_number(j, "alpha"), require_number(j, "beta"));
    if (family == "cubic2")
        return make_bimodal_cubic(require_number(j, "v1"), require_number(j, "v2"));
    if (family == "quartic3")
        return make_trimodal_quartic(require_number(j, "v2"), require_number(j, "v3"));
    if (family == "pl4") return make_pl4();
    if (family == "pl5") return make_pl5();
    if (family == "tent") return make_tent();
    if (family == "pl") return table_from_json(j);
    throw std::invalid_argument("unknown map family: " + family);
}

MapModel map_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open map file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("bad JSON in " + path + ": " + e.what());
    }
    return map_from_json(j);
}

}  // namespace mme
