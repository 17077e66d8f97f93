#include "spikeplan/model_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace spikeplan {

namespace {

constexpr char kMagic[8] = {'S', 'P', 'K', 'P', 'L', 'A', 'N', 'M'};
constexpr uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& in, T& v, const char* what) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw std::runtime_error(std::string("load_model: truncated file reading ") + what);
}

}  // namespace

void save_model(const StateNetwork& net, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_model: cannot write '" + path + "'");

    out.write(kMagic, sizeof(kMagic));
    write_pod(out, kVersion);
    write_pod(out, static_cast<uint32_t>(net.grid.neurons_per_dim));
    write_pod(out, net.grid.lo.x);
    write_pod(out, net.grid.lo.y);
    write_pod(out, net.grid.hi.x);
    write_pod(out, net.grid.hi.y);
    write_pod(out, static_cast<uint32_t>(net.tau));
    write_pod(out, net.activation.offset);
    write_pod(out, net.activation.scale);
    write_pod(out, static_cast<uint32_t>(net.K()));
    out.write(reinterpret_cast<const char*>(net.weights.data.data()),
              static_cast<std::streamsize>(net.weights.data.size() * sizeof(double)));
    if (!out) throw std::runtime_error("save_model: write failed for '" + path + "'");
}

StateNetwork load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_model: cannot open '" + path + "'");

    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("load_model: '" + path + "' is not a model file");
    uint32_t version = 0;
    read_pod(in, version, "version");
    if (version != kVersion) throw std::runtime_error("load_model: unsupported version " + std::to_string(version));

    uint32_t npd = 0;
    Vec2 lo, hi;
    read_pod(in, npd, "grid");
    read_pod(in, lo.x, "bounds");
    read_pod(in, lo.y, "bounds");
    read_pod(in, hi.x, "bounds");
    read_pod(in, hi.y, "bounds");
    uint32_t tau = 0;
    read_pod(in, tau, "tau");
    LogisticActivation act;
    read_pod(in, act.offset, "activation");
    read_pod(in, act.scale, "activation");
    uint32_t K = 0;
    read_pod(in, K, "K");
    if (npd < 2 || K != npd * npd) throw std::runtime_error("load_model: inconsistent grid header");
    if (tau < 1) throw std::runtime_error("load_model: bad tau");

    StateNetwork net;
    net.grid = make_grid(static_cast<int>(npd), lo, hi);
    net.tau = static_cast<int>(tau);
    net.activation = act;
    net.weights = Matrix(static_cast<int>(K), static_cast<int>(K));
    in.read(reinterpret_cast<char*>(net.weights.data.data()),
            static_cast<std::streamsize>(net.weights.data.size() * sizeof(double)));
    if (!in) throw std::runtime_error("load_model: truncated weight matrix");
    if (max_abs_weight(net.weights) > 1.0) throw std::runtime_error("load_model: weights outside [-1, 1]");
    return net;
}

}  // namespace spikeplan
