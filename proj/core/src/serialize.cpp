#include "k3lat/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "k3lat/textio.hpp"

namespace k3lat {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFormatVersion = "1";

json poly_list_json(const std::vector<Poly>& polys) {
    json arr = json::array();
    for (const Poly& f : polys) arr.push_back(poly_to_line(f));
    return arr;
}

std::vector<Poly> poly_list_from_json(const RingPtr& ring, const json& arr) {
    std::vector<Poly> out;
    for (const auto& line : arr) out.push_back(poly_from_line(ring, line.get<std::string>()));
    return out;
}

json sampler_json(const Sampler& s) {
    json j;
    j["p"] = s.src_ring->p();
    j["src_nvars"] = s.src_ring->nvars();
    j["src_dim"] = s.src_dim;
    j["src_gens"] = poly_list_json(s.src_gens);
    j["src_avoid"] = poly_list_json(s.src_avoid);
    json steps = json::array();
    for (size_t i = 0; i < s.steps.size(); ++i) {
        json st;
        st["nvars"] = s.rings[i + 1]->nvars();
        st["forms"] = poly_list_json(s.steps[i]);
        steps.push_back(st);
    }
    j["steps"] = steps;
    j["exclude"] = poly_list_json(s.exclude);
    j["require"] = poly_list_json(s.require);
    return j;
}

Sampler sampler_from_json(const json& j) {
    uint32_t p = j.at("p").get<uint32_t>();
    RingPtr src = make_ring(p, j.at("src_nvars").get<int>());
    Sampler s = Sampler::direct(src, {}, j.at("src_dim").get<int>());
    s.src_gens = poly_list_from_json(src, j.at("src_gens"));
    s.src_avoid = poly_list_from_json(src, j.at("src_avoid"));
    for (const auto& st : j.at("steps")) {
        RingPtr next = make_ring(p, st.at("nvars").get<int>());
        std::vector<Poly> forms = poly_list_from_json(s.rings.back(), st.at("forms"));
        s = s.then(std::move(forms), next);
    }
    s.exclude = poly_list_from_json(s.rings.back(), j.at("exclude"));
    s.require = poly_list_from_json(s.rings.back(), j.at("require"));
    return s;
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp);
        os << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed for " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

json certificate_json_obj(const Certificate& cert) {
    json arr = json::array();
    for (const CertField& f : cert.fields) {
        json e;
        e["name"] = f.name;
        e["status"] = f.status;
        if (!f.value.empty()) e["value"] = f.value;
        if (!f.reason.empty()) e["reason"] = f.reason;
        arr.push_back(e);
    }
    json j;
    j["all_pass"] = cert.all_pass();
    j["fields"] = arr;
    return j;
}

}  // namespace

std::string certificate_to_json(const Certificate& cert) {
    return certificate_json_obj(cert).dump(2) + "\n";
}

std::string lattice_report_json(const LatticeK3& L, const DivisorClass& pol) {
    json j;
    j["lattice"] = {2 * L.g - 2, L.d, L.d, L.n};
    j["class"] = {pol.a, pol.b};
    j["square"] = L.square(pol);
    NLTarget t = nl_target_genus(L, pol);
    j["genus"] = t.genus;
    j["primitive"] = t.primitive;
    BNReport bn = brill_noether_general(L, pol);
    j["bn_general"] = bn.general;
    json wit;
    wit["h0_D"] = bn.h0_D;
    wit["best_product"] = bn.best_product;
    wit["M"] = {bn.M.a, bn.M.b};
    wit["N"] = {bn.N.a, bn.N.b};
    wit["h0_M"] = bn.h0_M;
    wit["h0_N"] = bn.h0_N;
    wit["heuristic"] = bn.heuristic;
    j["witnesses"] = wit;
    return j.dump(2) + "\n";
}

void save_record(const K3Record& K, const std::string& path) {
    json j;
    j["format"] = kFormatVersion;
    j["p"] = K.p;
    j["seed"] = K.seed;
    j["trace"] = K.trace;
    if (K.lattice) {
        j["g"] = K.lattice->g;
        j["d"] = K.lattice->d;
        j["n"] = K.lattice->n;
        j["class"] = {K.pol.a, K.pol.b};
        j["genus"] = K.genus();
    } else {
        j["genus"] = K.genus();
    }
    j["ambient"] = K.surface.ring->nvars() - 1;
    int64_t quads = 0;
    for (const Poly& f : K.surface.gens)
        if (f.degree() == 2) ++quads;
    j["quadrics"] = quads;
    j["generators"] = K.surface.gens.size();
    j["surface_file"] = path.substr(path.find_last_of('/') + 1) + ".surface";
    j["sampler"] = sampler_json(K.sampler);
    if (K.has_curve) {
        j["curve_file"] = path.substr(path.find_last_of('/') + 1) + ".curve";
        j["curve_sampler"] = sampler_json(K.curve_sampler);
    }
    if (K.has_node) j["node"] = K.node.x;

    write_ideal_file(path + ".surface", Ideal(K.surface.ring, K.surface.gens));
    if (K.has_curve) write_ideal_file(path + ".curve", Ideal(K.curve.ring, K.curve.gens));
    atomic_write(path, j.dump(2) + "\n");
}

K3Record load_record(const std::string& path) {
    json j = json::parse(read_file(path));
    K3Record K;
    K.p = j.at("p").get<uint32_t>();
    K.seed = j.at("seed").get<uint64_t>();
    K.trace = j.at("trace").get<std::string>();
    if (j.contains("g")) {
        K.lattice = LatticeK3(j.at("g").get<int64_t>(), j.at("d").get<int64_t>(),
                              j.at("n").get<int64_t>());
        K.pol = DivisorClass{j.at("class")[0].get<int64_t>(), j.at("class")[1].get<int64_t>()};
    }
    Ideal surf = read_ideal_file(path + ".surface");
    K.surface = Subscheme{surf.ring(), surf.gens(), 2};
    K.sampler = sampler_from_json(j.at("sampler"));
    if (j.contains("curve_file")) {
        Ideal cv = read_ideal_file(path + ".curve");
        K.curve = Subscheme{cv.ring(), cv.gens(), 1};
        K.curve_sampler = sampler_from_json(j.at("curve_sampler"));
        K.has_curve = true;
    }
    if (j.contains("node")) {
        K.has_node = true;
        K.node.x = j.at("node").get<std::vector<uint32_t>>();
    }
    return K;
}

void save_certificate(const std::string& path, const Certificate& cert) {
    json j = json::parse(read_file(path));
    j["certificate"] = certificate_json_obj(cert);
    atomic_write(path, j.dump(2) + "\n");
}

// ------------------------------------------------------------- model cache

namespace {
std::string model_cache_path(const std::string& dir, int g, uint32_t p) {
    return dir + "/sigma" + std::to_string(g) + "_p" + std::to_string(p) + "_v" +
           kFormatVersion + ".model";
}
}  // namespace

bool model_cache_lookup(const std::string& dir, int g, uint32_t p, ModelRecord& out) {
    std::string path = model_cache_path(dir, g, p);
    std::ifstream probe(path);
    if (!probe) return false;
    json j = json::parse(read_file(path));
    out.g = j.at("g").get<int>();
    RingPtr amb = make_ring(p, j.at("ambient_vars").get<int>());
    out.variety = Subscheme{amb, poly_list_from_json(amb, j.at("ideal")),
                            j.at("dim").get<int>()};
    out.sampler = sampler_from_json(j.at("sampler"));
    return true;
}

void model_cache_store(const std::string& dir, const ModelRecord& rec, uint32_t p) {
    json j;
    j["format"] = kFormatVersion;
    j["g"] = rec.g;
    j["p"] = p;
    j["ambient_vars"] = rec.variety.ring->nvars();
    j["dim"] = rec.variety.dim;
    j["ideal"] = poly_list_json(rec.variety.gens);
    j["sampler"] = sampler_json(rec.sampler);
    atomic_write(model_cache_path(dir, rec.g, p), j.dump(2) + "\n");
}

ModelRecord mukai_model_cached(int g, uint32_t p, Rng& rng, const std::string& cache_dir,
                               bool fresh) {
    ModelRecord rec;
    if (!cache_dir.empty() && !fresh && model_cache_lookup(cache_dir, g, p, rec)) return rec;
    rec = mukai_model(g, p, rng);
    if (!cache_dir.empty()) model_cache_store(cache_dir, rec, p);
    return rec;
}

}  // namespace k3lat
