#ifndef AMS1D_SERIALIZATION_HPP
#define AMS1D_SERIALIZATION_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ams1d/errors.hpp"
#include "ams1d/mesh.hpp"
#include "ams1d/tridiagonal.hpp"

namespace ams1d {

/// Interchange format for tridiagonal systems:
///   {"diag": [...], "lower": [...], "rhs": [...]}
template <class Scalar>
nlohmann::ordered_json toJson(const TridiagonalSystem<Scalar>& sys) {
    nlohmann::ordered_json j;
    j["diag"] = std::vector<Scalar>(sys.diag.begin(), sys.diag.end());
    j["lower"] = std::vector<Scalar>(sys.lower.begin(), sys.lower.end());
    j["rhs"] = std::vector<Scalar>(sys.rhs.begin(), sys.rhs.end());
    return j;
}

namespace detail {

template <class Scalar>
VectorX<Scalar> numberArray(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key))
        throw ParseError("tridiagonal json: missing key \"" + key + "\"");
    const auto& arr = j.at(key);
    if (!arr.is_array())
        throw ParseError("tridiagonal json: \"" + key + "\" is not an array");
    VectorX<Scalar> v(arr.size());
    Eigen::Index i = 0;
    for (const auto& e : arr) {
        if (!e.is_number())
            throw ParseError("tridiagonal json: non-numeric entry in \"" + key + "\"");
        v[i++] = e.get<Scalar>();
    }
    return v;
}

} // namespace detail

template <class Scalar>
TridiagonalSystem<Scalar> tridiagonalFromJson(const nlohmann::json& j) {
    TridiagonalSystem<Scalar> sys;
    sys.diag = detail::numberArray<Scalar>(j, "diag");
    sys.lower = detail::numberArray<Scalar>(j, "lower");
    sys.rhs = detail::numberArray<Scalar>(j, "rhs");
    if (!sys.shapeValid())
        throw ParseError("tridiagonal json: need len(diag) == len(rhs) == len(lower)+1");
    return sys;
}

template <class Scalar>
TridiagonalSystem<Scalar> loadTridiagonalFile(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open \"" + path + "\"");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid json in \"" + path + "\": " + e.what());
    }
    return tridiagonalFromJson<Scalar>(j);
}

template <class Scalar>
nlohmann::ordered_json toJson(const MicroMesh<Scalar>& mesh) {
    return nlohmann::ordered_json(std::vector<Scalar>(mesh.nodes.begin(), mesh.nodes.end()));
}

} // namespace ams1d

#endif
