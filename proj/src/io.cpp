#include "diracdelay/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace diracdelay {

namespace {

using nlohmann::json;

json split_complex(const std::vector<cplx>& v, json& out, const char* re_key,
                   const char* im_key) {
    std::vector<double> re(v.size()), im(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        re[i] = v[i].real();
        im[i] = v[i].imag();
    }
    out[re_key] = re;
    out[im_key] = im;
    return out;
}

std::vector<cplx> join_complex(const json& j, const char* re_key, const char* im_key) {
    const auto& re = j.at(re_key);
    const auto& im = j.at(im_key);
    if (!re.is_array() || !im.is_array() || re.size() != im.size())
        throw std::invalid_argument("re/im arrays missing or of unequal length");
    std::vector<cplx> v(re.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = cplx(re[i].get<double>(), im[i].get<double>());
    return v;
}

}  // namespace

nlohmann::json to_json(const PotentialPair& pp) {
    json j;
    j["a"] = pp.a;
    j["M"] = pp.M();
    split_complex(pp.q, j, "q_re", "q_im");
    split_complex(pp.p, j, "p_re", "p_im");
    return j;
}

PotentialPair potential_pair_from_json(const nlohmann::json& j) {
    const DelayConfig cfg(j.at("a").get<double>());
    std::vector<cplx> q = join_complex(j, "q_re", "q_im");
    std::vector<cplx> p = join_complex(j, "p_re", "p_im");
    if (j.contains("M") && j.at("M").get<std::size_t>() + 1 != q.size())
        throw std::invalid_argument("declared M does not match sample count");
    return PotentialPair(cfg, std::move(q), std::move(p));
}

nlohmann::json to_json(const Spectrum& s) {
    json j;
    j["j"] = s.problem_j;
    j["N"] = s.half_width;
    split_complex(s.values, j, "re", "im");
    return j;
}

Spectrum spectrum_from_json(const nlohmann::json& j) {
    return Spectrum(j.at("j").get<int>(), j.at("N").get<int>(),
                    join_complex(j, "re", "im"));
}

nlohmann::json to_json(const SubspectrumSpec& spec) {
    json j;
    j["j"] = spec.problem_j;
    j["m"] = spec.m;
    j["N"] = spec.half_width;
    split_complex(spec.values, j, "re", "im");
    j["mult"] = spec.mult;
    return j;
}

SubspectrumSpec subspectrum_from_json(const nlohmann::json& j) {
    std::vector<cplx> values = join_complex(j, "re", "im");
    std::vector<int> mult;
    if (j.contains("mult")) {
        mult = j.at("mult").get<std::vector<int>>();
    } else {
        mult.assign(values.size(), 1);
    }
    return SubspectrumSpec(j.at("j").get<int>(), j.at("m").get<int>(),
                           j.at("N").get<int>(), std::move(values), std::move(mult));
}

nlohmann::json to_json(const TypeReport& rep) {
    json j;
    j["outside_energy_fraction"] = rep.outside_energy_fraction;
    j["threshold"] = rep.threshold;
    j["pass"] = rep.pass;
    j["N"] = rep.half_width;
    return j;
}

nlohmann::json to_json(const StabilityReport& rep) {
    json j;
    j["r"] = rep.r;
    j["trials"] = rep.trials;
    j["excluded"] = rep.excluded;
    j["max_ratio"] = rep.max_ratio;
    j["p50"] = rep.p50_ratio;
    j["p99"] = rep.p99_ratio;
    j["loglog_slope"] = rep.loglog_slope;
    j["seed"] = rep.seed;
    j["N"] = rep.half_width;
    j["generator"] = rep.generator;
    return j;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string stability_csv(const std::vector<StabilityTrial>& trials) {
    std::string out = "trial,kind,rhs,lhs,ratio,excluded\n";
    for (const StabilityTrial& t : trials) {
        out += std::to_string(t.index);
        out += ',';
        out += t.kind;
        out += ',';
        out += format_double(t.rhs);
        out += ',';
        out += format_double(t.lhs);
        out += ',';
        out += format_double(t.ratio);
        out += ',';
        out += t.excluded ? '1' : '0';
        out += '\n';
    }
    return out;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return json::parse(in);
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

}  // namespace diracdelay
