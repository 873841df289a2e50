#include "lady/harness/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace lady {

namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

constexpr char kMagic[8] = {'L', 'A', 'D', 'Y', 'C', 'K', 'P', 'T'};
constexpr char kObsMagic[8] = {'L', 'A', 'D', 'Y', 'O', 'B', 'S', '1'};

class Writer {
public:
    template <typename T>
    void put(const T& v) {
        const auto* p = reinterpret_cast<const unsigned char*>(&v);
        bytes.insert(bytes.end(), p, p + sizeof(T));
    }
    void put_raw(const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        bytes.insert(bytes.end(), b, b + n);
    }
    std::vector<unsigned char> bytes;
};

class Parser {
public:
    Parser(const std::vector<unsigned char>& b, std::string what) : bytes_(b), what_(std::move(what)) {}
    template <typename T>
    T get(const char* field) {
        T v;
        take(&v, sizeof(T), field);
        return v;
    }
    void take(void* dst, std::size_t n, const char* field) {
        if (bytes_.size() - pos_ < n) {
            throw CheckpointError(what_ + ": truncated while reading " + field + " (corrupt payload)");
        }
        std::memcpy(dst, bytes_.data() + pos_, n);
        pos_ += n;
    }
    bool at_end() const { return pos_ == bytes_.size(); }

private:
    const std::vector<unsigned char>& bytes_;
    std::string what_;
    std::size_t pos_ = 0;
};

std::vector<unsigned char> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void check_grid_header(std::uint32_t d, std::uint32_t n, const std::string& what) {
    if ((d != 2 && d != 3) || n < 8 || n % 2 != 0 || n > 4096) {
        throw CheckpointError(what + ": implausible grid header d = " + std::to_string(d) +
                              ", N = " + std::to_string(n));
    }
}

}  // namespace

void save_checkpoint(const Checkpoint& ck, const std::string& path) {
    const Grid grid(ck.dim, ck.n);
    Writer w;
    w.put_raw(kMagic, sizeof kMagic);
    w.put(kCheckpointVersion);
    w.put(static_cast<std::uint32_t>(ck.dim));
    w.put(static_cast<std::uint32_t>(ck.n));
    w.put(ck.params.p);
    w.put(ck.params.nu0);
    w.put(ck.params.nu1);
    w.put(ck.t);
    w.put(static_cast<std::uint32_t>(ck.fields.size()));
    for (const SpectralField& f : ck.fields) {
        if (f.grid() != grid || f.rank() != Rank::vector) throw CheckpointError("save_checkpoint: field shape mismatch");
        w.put_raw(f.data().data(), f.data().size() * sizeof(Complex));
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(w.bytes.data()), static_cast<std::streamsize>(w.bytes.size()));
    if (!out) throw CheckpointError("write to '" + path + "' failed");
}

Checkpoint load_checkpoint(const std::string& path) {
    const std::vector<unsigned char> bytes = read_file(path);
    Parser in(bytes, path);
    char magic[8];
    in.take(magic, sizeof magic, "magic");
    if (std::memcmp(magic, kMagic, sizeof magic) != 0) throw CheckpointError(path + ": not a checkpoint (bad magic)");
    const auto version = in.get<std::uint32_t>("version");
    if (version != kCheckpointVersion) {
        throw CheckpointError(path + ": unsupported checkpoint version " + std::to_string(version));
    }
    const auto d = in.get<std::uint32_t>("dimension");
    const auto n = in.get<std::uint32_t>("grid size");
    check_grid_header(d, n, path);
    Checkpoint ck;
    ck.dim = static_cast<int>(d);
    ck.n = static_cast<int>(n);
    ck.params.p = in.get<double>("p");
    ck.params.nu0 = in.get<double>("nu0");
    ck.params.nu1 = in.get<double>("nu1");
    ck.t = in.get<double>("time");
    const auto count = in.get<std::uint32_t>("field count");
    const Grid grid(ck.dim, ck.n);
    for (std::uint32_t i = 0; i < count; ++i) {
        SpectralField f(grid, Rank::vector);
        in.take(f.data().data(), f.data().size() * sizeof(Complex), "field payload");
        ck.fields.push_back(std::move(f));
    }
    if (!in.at_end()) throw CheckpointError(path + ": trailing bytes after payload (corrupt file)");
    return ck;
}

Checkpoint load_checkpoint(const std::string& path, const Grid& expected) {
    Checkpoint ck = load_checkpoint(path);
    if (ck.dim != expected.dim() || ck.n != expected.n()) {
        throw CheckpointError(path + ": grid " + std::to_string(ck.dim) + "D N = " + std::to_string(ck.n) +
                              " does not match the configured " + std::to_string(expected.dim()) +
                              "D N = " + std::to_string(expected.n()));
    }
    return ck;
}

std::vector<unsigned char> serialize_observation(const Observation& obs) {
    Writer w;
    w.put_raw(kObsMagic, sizeof kObsMagic);
    const bool nodal = obs.spec().kind == InterpolantSpec::Kind::nodal;
    w.put(static_cast<std::uint32_t>(nodal ? 1 : 0));
    w.put(static_cast<std::uint32_t>(obs.grid().dim()));
    w.put(static_cast<std::uint32_t>(obs.grid().n()));
    w.put(static_cast<std::uint32_t>(nodal ? obs.spec().stride : obs.spec().modes));
    w.put(static_cast<std::uint32_t>(obs.components()));
    w.put(obs.time());
    if (nodal) {
        w.put(static_cast<std::uint64_t>(obs.nodes().size()));
        w.put_raw(obs.nodes().data(), obs.nodes().size() * sizeof(double));
    } else {
        w.put(static_cast<std::uint64_t>(obs.modes().size()));
        w.put_raw(obs.modes().data(), obs.modes().size() * sizeof(Complex));
    }
    return std::move(w.bytes);
}

Observation deserialize_observation(const std::vector<unsigned char>& bytes) {
    Parser in(bytes, "observation");
    char magic[8];
    in.take(magic, sizeof magic, "magic");
    if (std::memcmp(magic, kObsMagic, sizeof magic) != 0) throw CheckpointError("observation: bad magic");
    const auto kind = in.get<std::uint32_t>("kind");
    const auto d = in.get<std::uint32_t>("dimension");
    const auto n = in.get<std::uint32_t>("grid size");
    check_grid_header(d, n, "observation");
    const auto param = in.get<std::uint32_t>("resolution");
    const auto components = in.get<std::uint32_t>("components");
    const double t = in.get<double>("time");
    const auto count = in.get<std::uint64_t>("count");
    if (kind > 1) throw CheckpointError("observation: unknown interpolant kind");
    const Grid grid(static_cast<int>(d), static_cast<int>(n));
    const InterpolantSpec spec = kind == 1 ? InterpolantSpec::nodal(static_cast<int>(param))
                                           : InterpolantSpec::fourier(static_cast<int>(param));
    std::vector<Complex> modes;
    std::vector<double> nodes;
    if (count > bytes.size()) throw CheckpointError("observation: count exceeds payload (corrupt payload)");
    if (kind == 1) {
        nodes.resize(count);
        in.take(nodes.data(), count * sizeof(double), "nodal payload");
    } else {
        modes.resize(count);
        in.take(modes.data(), count * sizeof(Complex), "modal payload");
    }
    if (!in.at_end()) throw CheckpointError("observation: trailing bytes");
    return Observation(grid, spec, static_cast<int>(components), t, std::move(modes), std::move(nodes));
}

}  // namespace lady
