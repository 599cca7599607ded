#include "hv2q/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hv2q/report.hpp"

namespace hv2q {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument(std::string(what) + ": malformed JSON");
    return j;
}

cplx parse_complex(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument(std::string(what) + ": expected [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

TwoQubitState parse_state_json(const std::string& text) {
    const json j = parse_or_throw(text, "state");
    if (!j.is_object() || !j.contains("amplitudes") || !j["amplitudes"].is_array() ||
        j["amplitudes"].size() != 4)
        throw std::invalid_argument("state: expected {\"amplitudes\": [[re,im] x 4]}");
    Ket4 k;
    for (int i = 0; i < 4; ++i) k[i] = parse_complex(j["amplitudes"][static_cast<size_t>(i)], "state");
    if (k.norm() < 1e-12) throw std::invalid_argument("state: amplitudes are all zero");
    return make_state(k);
}

LocalObservable parse_observable_json(const std::string& text) {
    const json j = parse_or_throw(text, "observable");
    if (!j.is_object() || !j.contains("alpha1") || !j.contains("alpha2") || !j.contains("axis") ||
        !j["alpha1"].is_number() || !j["alpha2"].is_number() || !j["axis"].is_array() ||
        j["axis"].size() != 3)
        throw std::invalid_argument(
            "observable: expected {\"alpha1\": r, \"alpha2\": r, \"axis\": [x,y,z]}");
    Vec3 axis{j["axis"][0].get<double>(), j["axis"][1].get<double>(), j["axis"][2].get<double>()};
    return canonicalize_observable(j["alpha1"].get<double>(), j["alpha2"].get<double>(), axis);
}

CMat4 parse_hamiltonian_json(const std::string& text) {
    const json j = parse_or_throw(text, "hamiltonian");
    const json* rows = &j;
    if (j.is_object()) {
        if (!j.contains("matrix")) throw std::invalid_argument("hamiltonian: expected a 4x4 array");
        rows = &j["matrix"];
    }
    if (!rows->is_array() || rows->size() != 4)
        throw std::invalid_argument("hamiltonian: expected a 4x4 array of [re,im] pairs");
    CMat4 h;
    for (int r = 0; r < 4; ++r) {
        const json& row = (*rows)[static_cast<size_t>(r)];
        if (!row.is_array() || row.size() != 4)
            throw std::invalid_argument("hamiltonian: expected a 4x4 array of [re,im] pairs");
        for (int c = 0; c < 4; ++c) h(r, c) = parse_complex(row[static_cast<size_t>(c)], "hamiltonian");
    }
    if (!h.is_hermitian(1e-10)) throw std::invalid_argument("hamiltonian: matrix is not Hermitian");
    return h;
}

std::string state_to_json(const TwoQubitState& psi) {
    std::ostringstream os;
    os << "{\"amplitudes\":[";
    for (int i = 0; i < 4; ++i) {
        if (i) os << ",";
        os << "[" << format_double(psi.ket[i].real()) << "," << format_double(psi.ket[i].imag())
           << "]";
    }
    os << "]}";
    return os.str();
}

std::string observable_to_json(const LocalObservable& o) {
    std::ostringstream os;
    os << "{\"alpha1\":" << format_double(o.alpha1) << ",\"alpha2\":" << format_double(o.alpha2)
       << ",\"axis\":[" << format_double(o.axis.x) << "," << format_double(o.axis.y) << ","
       << format_double(o.axis.z) << "]}";
    return os.str();
}

std::string load_inline_or_file(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace hv2q
