#include "chaoskit/json_io.hpp"

#include <cstdio>

#include "json.hpp"

namespace chaoskit::json_io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("malformed JSON input");
    return j;
}

template <typename T>
T field(const json& j, const char* name) {
    if (!j.contains(name)) throw ConfigError(std::string("missing field: ") + name);
    try {
        return j.at(name).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field has the wrong type: ") + name);
    }
}

json dyadic_to_obj(const DyadicMap& g) {
    return json{{"level", g.level()}, {"perm", g.perm()}};
}

DyadicMap dyadic_from_obj(const json& j) {
    return DyadicMap::from_permutation(field<int>(j, "level"),
                                       field<std::vector<std::uint32_t>>(j, "perm"));
}

json kernel_to_obj(const GridKernel& f) {
    json entries = json::array();
    for (const auto& [t, v] : f.entries())
        entries.push_back(json{{"cells", t.cells()}, {"atoms", t.atoms()}, {"value", v}});
    return json{{"n", f.degree()},
                {"level", f.level()},
                {"atom_count", f.atom_count()},
                {"entries", std::move(entries)}};
}

GridKernel kernel_from_obj(const json& j) {
    GridKernel f(field<int>(j, "n"), field<int>(j, "level"), field<int>(j, "atom_count"));
    if (!j.contains("entries")) throw ConfigError("missing field: entries");
    for (const auto& e : j.at("entries")) {
        try {
            f.set(CellTuple::from_vectors(field<std::vector<int>>(e, "cells"),
                                          field<std::vector<int>>(e, "atoms")),
                  field<double>(e, "value"));
        } catch (const Error& err) {
            throw ConfigError(std::string("bad kernel entry: ") + err.what());
        }
    }
    return f;
}

}  // namespace

std::string to_json(const DyadicMap& g) { return dyadic_to_obj(g).dump(); }

DyadicMap dyadic_map_from_json(const std::string& text) { return dyadic_from_obj(parse(text)); }

std::string to_json(const GroupSpec& spec) {
    json gens = json::array();
    for (const auto& g : spec.generators) gens.push_back(dyadic_to_obj(g));
    return json{{"generators", std::move(gens)}, {"closure_cap", spec.closure_cap}}.dump();
}

GroupSpec group_from_json(const std::string& text) {
    const json j = parse(text);
    GroupSpec spec;
    if (!j.contains("generators")) throw ConfigError("missing field: generators");
    for (const auto& g : j.at("generators")) spec.generators.push_back(dyadic_from_obj(g));
    if (spec.generators.empty()) throw ConfigError("generators must be nonempty");
    if (j.contains("closure_cap")) spec.closure_cap = field<std::size_t>(j, "closure_cap");
    return spec;
}

std::string to_json(const LevyModel& model) {
    json atoms = json::array();
    for (const auto& a : model.atoms()) atoms.push_back(json{{"x", a.x}, {"lambda", a.lambda}});
    return json{{"sigma", model.sigma()}, {"atoms", std::move(atoms)}}.dump();
}

LevyModel model_from_json(const std::string& text) {
    const json j = parse(text);
    std::vector<JumpAtom> atoms;
    if (j.contains("atoms"))
        for (const auto& a : j.at("atoms"))
            atoms.push_back({field<double>(a, "x"), field<double>(a, "lambda")});
    try {
        return LevyModel(field<double>(j, "sigma"), std::move(atoms));
    } catch (const Error& err) {
        throw ConfigError(std::string("bad model: ") + err.what());
    }
}

std::string to_json(const GridKernel& f) { return kernel_to_obj(f).dump(); }

GridKernel kernel_from_json(const std::string& text) { return kernel_from_obj(parse(text)); }

std::string to_json(const ChaosVector& cv) {
    json kernels = json::array();
    for (const auto& k : cv.kernels) kernels.push_back(kernel_to_obj(k));
    return json{{"constant", cv.constant},
                {"level", cv.level()},
                {"atom_count", cv.atom_count()},
                {"kernels", std::move(kernels)}}
        .dump();
}

ChaosVector chaos_vector_from_json(const std::string& text) {
    const json j = parse(text);
    ChaosVector cv;
    cv.constant = field<double>(j, "constant");
    if (j.contains("kernels"))
        for (const auto& k : j.at("kernels")) cv.kernels.push_back(kernel_from_obj(k));
    for (std::size_t i = 0; i < cv.kernels.size(); ++i)
        if (cv.kernels[i].degree() != static_cast<int>(i) + 1)
            throw ConfigError("chaos vector kernels must have degrees 1..N in order");
    return cv;
}

std::string to_json(const AffineGenerator& gen) {
    return json{{"a", gen.a}, {"b", gen.b}, {"c", gen.c}, {"drivers", gen.drivers}}.dump();
}

AffineGenerator generator_from_json(const std::string& text) {
    const json j = parse(text);
    AffineGenerator gen;
    gen.a = field<std::vector<double>>(j, "a");
    gen.c = field<std::vector<double>>(j, "c");
    if (j.contains("b")) gen.b = field<std::vector<std::vector<double>>>(j, "b");
    if (j.contains("drivers"))
        gen.drivers = field<std::vector<std::vector<double>>>(j, "drivers");
    return gen;
}

std::string to_json(const ErgodicityCertificate& cert) {
    json pairs = json::array();
    for (const auto& p : cert.pairs)
        pairs.push_back(json{{"level", p.level},
                             {"cells", {p.cell_a, p.cell_b}},
                             {"stabilizer_generators", p.stabilizer_generators},
                             {"transitive", p.transitive}});
    return json{{"set", {{"level", cert.set.level}, {"cells", cert.set.cells}}},
                {"d_max", cert.d_max},
                {"pairs", std::move(pairs)},
                {"passed", cert.passed}}
        .dump();
}

namespace {

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

std::string kernel_content_hash(const GridKernel& f) { return hex(fnv1a(to_json(f))); }

std::string text_hash(const std::string& text) { return hex(fnv1a(text)); }

}  // namespace chaoskit::json_io
