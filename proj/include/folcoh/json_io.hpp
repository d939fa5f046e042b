#pragma once

#include <string>

#include "json.hpp"

#include "folcoh/cohomology.hpp"
#include "folcoh/poly_io.hpp"
#include "folcoh/regular_homotopy.hpp"

namespace folcoh {

using nlohmann::json;

/// Malformed job input; `path` is a JSON pointer to the offending value.
class SpecError : public Error {
public:
    SpecError(std::string path, const std::string& message)
        : Error(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

namespace io {

inline const json& member(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw SpecError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SpecError(path + "/" + key, "missing");
    return *it;
}

inline std::size_t unsigned_value(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw SpecError(path, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

inline Polynomial polynomial(const json& v, const Coords& coords, const std::string& path) {
    if (!v.is_string()) throw SpecError(path, "expected a polynomial string");
    try {
        return parse_polynomial(v.get<std::string>(), coords);
    } catch (const ParseError& e) {
        throw SpecError(path, e.what());
    }
}

/// {"blocks": ["e", "h", "ff"]}, or the bare array.
inline WilliamsonBasis williamson_type(const json& v, const std::string& path) {
    const json& blocks = v.is_array() ? v : member(v, "blocks", path);
    std::string blocks_path = v.is_array() ? path : path + "/blocks";
    if (!blocks.is_array() || blocks.empty()) throw SpecError(blocks_path, "expected a nonempty array of block codes");
    std::vector<BlockKind> kinds;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        std::string code = b.is_string() ? b.get<std::string>() : "";
        if (code == "e") {
            kinds.push_back(BlockKind::elliptic);
        } else if (code == "h") {
            kinds.push_back(BlockKind::hyperbolic);
        } else if (code == "ff") {
            kinds.push_back(BlockKind::focus_focus);
        } else {
            throw SpecError(blocks_path + "/" + std::to_string(i), "block must be \"e\", \"h\" or \"ff\"");
        }
    }
    if (kinds.size() > 16) throw SpecError(blocks_path, "too many blocks");
    return WilliamsonBasis(kinds);
}

inline json to_json(const WilliamsonBasis& basis) {
    json blocks = json::array();
    for (const auto& b : basis.blocks()) blocks.push_back(block_code(b.kind));
    return {{"blocks", blocks}};
}

inline RegularModel regular_model(const json& v, const std::string& path) {
    std::size_t m = unsigned_value(member(v, "m", path), path + "/m");
    std::size_t n = unsigned_value(member(v, "n", path), path + "/n");
    if (n == 0 || n > m || m > 32) throw SpecError(path, "model needs 1 <= n <= m <= 32");
    return RegularModel(m, n);
}

inline json to_json(const RegularModel& model) { return {{"m", model.total()}, {"n", model.leaf()}}; }

/// "1,3" -> {0, 2}; indices must be increasing and within the frame.
inline IndexSet subset(const std::string& key, std::size_t generators, const std::string& path) {
    IndexSet out;
    if (key.empty()) return out;
    std::size_t last = 0;
    std::size_t start = 0;
    while (start <= key.size()) {
        auto comma = key.find(',', start);
        std::string token = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
            throw SpecError(path, "bad subset key \"" + key + "\"");
        std::size_t index = std::stoul(token);
        if (index == 0 || index > generators || index <= last)
            throw SpecError(path, "subset key \"" + key + "\" must list increasing indices in 1.." +
                                      std::to_string(generators));
        out = out.with(index - 1);
        last = index;
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

/// {"k": 2, "components": {"1,2": "<polynomial>"}}
template <class Frame>
KForm<Frame> form(const json& v, const Frame& frame, const std::string& path) {
    std::size_t k = unsigned_value(member(v, "k", path), path + "/k");
    if (k > frame.generator_count()) throw SpecError(path + "/k", "form degree exceeds the number of generators");
    KForm<Frame> out(frame, k);
    const json& components = member(v, "components", path);
    if (!components.is_object()) throw SpecError(path + "/components", "expected an object");
    for (const auto& [key, value] : components.items()) {
        std::string cpath = path + "/components/" + key;
        IndexSet s = subset(key, frame.generator_count(), cpath);
        if (s.size() != k) throw SpecError(cpath, "subset size differs from k");
        out.add(s, polynomial(value, frame.coords(), cpath));
    }
    return out;
}

template <class Frame>
json to_json(const KForm<Frame>& f) {
    json components = json::object();
    for (const auto& [s, p] : f.components()) components[s.str()] = to_string(p);
    return {{"k", f.degree()}, {"components", components}};
}

inline json to_json(const CohomologySlice& s) {
    json generators = json::array();
    for (const auto& g : s.generators) generators.push_back(to_json(g));
    return {{"k", s.k},
            {"d", s.d},
            {"dimKernel", s.dim_kernel},
            {"dimImage", s.dim_image_from_below},
            {"dimH", s.dim_h},
            {"oracle", s.oracle_count ? json(*s.oracle_count) : json(nullptr)},
            {"generators", generators}};
}

inline json to_json(const CohomologyReport& r) {
    json slices = json::array();
    for (const auto& s : r.slices) slices.push_back(to_json(s));
    json out = {{"type", to_json(r.basis)}, {"slices", slices}};
    if (!r.has_oracle()) out["note"] = "no paper oracle";
    return out;
}

inline CohomologyReport cohomology_report(const json& v) {
    WilliamsonBasis basis = williamson_type(member(v, "type", ""), "/type");
    CohomologyReport out{basis, {}};
    const json& slices = member(v, "slices", "");
    if (!slices.is_array()) throw SpecError("/slices", "expected an array");
    for (std::size_t i = 0; i < slices.size(); ++i) {
        std::string path = "/slices/" + std::to_string(i);
        const json& s = slices[i];
        CohomologySlice slice;
        slice.k = unsigned_value(member(s, "k", path), path + "/k");
        slice.d = static_cast<Monomial::Exponent>(unsigned_value(member(s, "d", path), path + "/d"));
        slice.dim_kernel = unsigned_value(member(s, "dimKernel", path), path + "/dimKernel");
        slice.dim_image_from_below = unsigned_value(member(s, "dimImage", path), path + "/dimImage");
        slice.dim_h = unsigned_value(member(s, "dimH", path), path + "/dimH");
        const json& oracle = member(s, "oracle", path);
        if (!oracle.is_null()) slice.oracle_count = unsigned_value(oracle, path + "/oracle");
        const json& gens = member(s, "generators", path);
        for (std::size_t g = 0; g < gens.size(); ++g)
            slice.generators.push_back(form(gens[g], basis, path + "/generators/" + std::to_string(g)));
        out.slices.push_back(std::move(slice));
    }
    return out;
}

}  // namespace io
}  // namespace folcoh
