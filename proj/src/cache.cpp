#include "wedge32/cache.hpp"

#include <cstring>
#include <fstream>
#include <unordered_map>

namespace wedge32 {

namespace {

constexpr char kMagic[4] = {'W', '3', '2', 'C'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

struct Writer {
    std::string out;
    void u8(std::uint8_t v) { out.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) { out.append(reinterpret_cast<const char*>(&v), 4); }
    void u64(std::uint64_t v) { out.append(reinterpret_cast<const char*>(&v), 8); }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        out.append(s);
    }
};

struct Reader {
    const std::string& in;
    std::size_t pos = 0;
    void need(std::size_t n) const {
        if (pos + n > in.size()) throw CacheError("cache file truncated");
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(in[pos++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v;
        std::memcpy(&v, in.data() + pos, 4);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v;
        std::memcpy(&v, in.data() + pos, 8);
        pos += 8;
        return v;
    }
    std::string str() {
        const std::uint32_t n = u32();
        need(n);
        std::string s = in.substr(pos, n);
        pos += n;
        return s;
    }
};

void write_file(const std::filesystem::path& path, CacheKind kind, const std::string& payload) {
    std::string head;
    head.append(kMagic, 4);
    Writer hw;
    hw.u32(kVersion);
    hw.u8(static_cast<std::uint8_t>(kind));
    hw.u8(0);
    hw.u8(0);
    hw.u8(0);
    hw.u64(fnv1a(payload));
    head.append(hw.out);

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw CacheError("cannot write cache file " + path.string());
        os.write(head.data(), static_cast<std::streamsize>(head.size()));
        os.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (!os) throw CacheError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path, CacheKind expected_kind) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw CacheError("cache file missing: " + path.string());
    std::string all((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (all.size() < 20 || std::memcmp(all.data(), kMagic, 4) != 0)
        throw CacheError("bad cache magic in " + path.string());
    const std::string header = all.substr(4, 16);
    Reader hr{header};
    const std::uint32_t version = hr.u32();
    if (version != kVersion)
        throw CacheError("cache format version mismatch in " + path.string());
    const std::uint8_t kind = hr.u8();
    hr.u8();
    hr.u8();
    hr.u8();
    const std::uint64_t checksum = hr.u64();
    std::string payload = all.substr(20);
    if (kind != static_cast<std::uint8_t>(expected_kind))
        throw CacheError("cache kind mismatch in " + path.string());
    if (fnv1a(payload) != checksum)
        throw CacheError("cache checksum mismatch in " + path.string());
    return payload;
}

void write_descriptor(Writer& w, const FieldDescriptor* d) {
    w.u32(static_cast<std::uint32_t>(d->radicals().size()));
    for (const unsigned p : d->radicals()) w.u32(p);
}

const FieldDescriptor* read_descriptor(Reader& r) {
    const std::uint32_t n = r.u32();
    std::vector<unsigned> radicals;
    radicals.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) radicals.push_back(r.u32());
    return FieldDescriptor::with_radicals(std::move(radicals));
}

}  // namespace

void write_group_cache(const std::filesystem::path& path, const FiniteMatrixGroup& g) {
    const unsigned dim = g.dim();
    const std::size_t nn = std::size_t(dim) * dim;

    // remap pool ids into first-use order so bytes are independent of the
    // worker count that produced the pool
    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    std::vector<std::uint32_t> scalar_order;
    const auto map_id = [&](std::uint32_t id) {
        auto [it, inserted] = remap.emplace(id, static_cast<std::uint32_t>(scalar_order.size()));
        if (inserted) scalar_order.push_back(id);
        return it->second;
    };

    std::vector<std::uint32_t> flat;
    flat.reserve(g.size() * nn);
    for (std::size_t pos = 0; pos < g.size(); ++pos)
        for (const std::uint32_t id : g.packed(pos)) flat.push_back(map_id(id));
    std::vector<std::uint32_t> dets;
    dets.reserve(g.size());
    for (std::size_t pos = 0; pos < g.size(); ++pos)
        dets.push_back(map_id(g.pool()->intern(g.determinant(pos))));

    Writer w;
    write_descriptor(w, g.pool()->descriptor());
    w.u32(dim);
    w.u64(scalar_order.size());
    for (const std::uint32_t id : scalar_order) w.str(g.pool()->at(id).to_text());
    w.u64(g.size());
    for (const std::uint32_t id : flat) w.u32(id);
    for (const std::uint32_t id : dets) w.u32(id);
    w.u32(static_cast<std::uint32_t>(g.generator_positions().size()));
    for (const std::uint32_t p : g.generator_positions()) w.u32(p);

    write_file(path, CacheKind::group, w.out);
}

FiniteMatrixGroup read_group_cache(const std::filesystem::path& path) {
    const std::string payload = read_file(path, CacheKind::group);
    Reader r{payload};
    const FieldDescriptor* d = read_descriptor(r);
    const std::uint32_t dim = r.u32();
    const std::uint64_t scalar_count = r.u64();

    auto pool = std::make_shared<ScalarPool>(d);
    std::vector<std::uint32_t> id_map;
    id_map.reserve(scalar_count);
    for (std::uint64_t i = 0; i < scalar_count; ++i)
        id_map.push_back(pool->intern(TowerElement::from_text(d, r.str())));

    const std::uint64_t count = r.u64();
    const std::size_t nn = std::size_t(dim) * dim;
    std::vector<std::uint32_t> flat(count * nn);
    for (auto& id : flat) {
        const std::uint32_t stored = r.u32();
        if (stored >= id_map.size()) throw CacheError("scalar id out of range");
        id = id_map[stored];
    }
    std::vector<std::uint32_t> dets(count);
    for (auto& id : dets) {
        const std::uint32_t stored = r.u32();
        if (stored >= id_map.size()) throw CacheError("scalar id out of range");
        id = id_map[stored];
    }
    const std::uint32_t gen_count = r.u32();
    std::vector<std::uint32_t> gens(gen_count);
    for (auto& g : gens) g = r.u32();

    return FiniteMatrixGroup::restore(std::move(pool), dim, std::move(flat), std::move(dets),
                                      std::move(gens));
}

void write_matrices_cache(const std::filesystem::path& path, const std::vector<MatrixK>& ms) {
    Writer w;
    if (ms.empty()) throw DomainError("refusing to cache an empty matrix list");
    write_descriptor(w, ms[0].descriptor());
    w.u64(ms.size());
    for (const MatrixK& m : ms) {
        if (m.descriptor() != ms[0].descriptor())
            throw DomainError("matrix cache requires one shared descriptor");
        w.u32(m.rows());
        w.u32(m.cols());
        for (unsigned i = 0; i < m.rows(); ++i)
            for (unsigned c = 0; c < m.cols(); ++c) w.str(m.at(i, c).to_text());
    }
    write_file(path, CacheKind::matrices, w.out);
}

std::vector<MatrixK> read_matrices_cache(const std::filesystem::path& path) {
    const std::string payload = read_file(path, CacheKind::matrices);
    Reader r{payload};
    const FieldDescriptor* d = read_descriptor(r);
    const std::uint64_t count = r.u64();
    std::vector<MatrixK> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint32_t rows = r.u32();
        const std::uint32_t cols = r.u32();
        MatrixK m(rows, cols, d);
        for (unsigned rr = 0; rr < rows; ++rr)
            for (unsigned cc = 0; cc < cols; ++cc)
                m.at(rr, cc) = TowerElement::from_text(d, r.str());
        out.push_back(std::move(m));
    }
    return out;
}

void write_report_cache(const std::filesystem::path& path, const VerificationReport& rep) {
    Writer w;
    w.str(rep.to_json(/*include_timings=*/false));
    write_file(path, CacheKind::report, w.out);
}

std::string read_report_cache(const std::filesystem::path& path) {
    const std::string payload = read_file(path, CacheKind::report);
    Reader r{payload};
    return r.str();
}

}  // namespace wedge32
