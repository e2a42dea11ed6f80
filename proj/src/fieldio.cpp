#include "emtk/fieldio.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

namespace emtk {

namespace {

constexpr char kFieldMagic[6] = {'V', 'F', 'L', 'D', '1', '\0'};
constexpr char kMeasureMagic[6] = {'V', 'M', 'S', 'R', '1', '\0'};

class Writer {
  public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    }
    void bytes(const void* p, std::size_t len) { out_.write(static_cast<const char*>(p), len); }
    void u8(std::uint8_t v) { bytes(&v, 1); }
    void u16(std::uint16_t v) { bytes(&v, 2); }
    void u32(std::uint32_t v) { bytes(&v, 4); }
    void f64(double v) { bytes(&v, 8); }
    void f64_array(const std::vector<double>& v) { bytes(v.data(), v.size() * 8); }
    void close() {
        out_.close();
        if (!out_) throw std::runtime_error("write failure on close");
    }

  private:
    std::ofstream out_;
};

class Reader {
  public:
    explicit Reader(const std::string& path) : in_(path, std::ios::binary) {
        if (!in_) throw std::runtime_error("cannot open for reading: " + path);
    }
    std::uint64_t offset() const { return offset_; }
    void bytes(void* p, std::size_t len, const char* what) {
        in_.read(static_cast<char*>(p), len);
        if (std::size_t(in_.gcount()) != len)
            throw ParseError(std::string("truncated payload while reading ") + what, offset_);
        offset_ += len;
    }
    std::uint8_t u8(const char* what) { std::uint8_t v; bytes(&v, 1, what); return v; }
    std::uint16_t u16(const char* what) { std::uint16_t v; bytes(&v, 2, what); return v; }
    std::uint32_t u32(const char* what) { std::uint32_t v; bytes(&v, 4, what); return v; }
    double f64(const char* what) { double v; bytes(&v, 8, what); return v; }
    void f64_array(std::vector<double>& v, const char* what) { bytes(v.data(), v.size() * 8, what); }

  private:
    std::ifstream in_;
    std::uint64_t offset_ = 0;
};

void check_no_nan(const std::vector<double>& data, std::uint64_t block_start,
                  const char* what) {
    for (std::size_t i = 0; i < data.size(); ++i)
        if (std::isnan(data[i]))
            throw ParseError(std::string("NaN payload in ") + what, block_start + 8 * i);
}

}  // namespace

void save_field(const SampledField& field, const std::string& path) {
    field.validate_structure();
    Writer w(path);
    w.bytes(kFieldMagic, 6);
    const int channels = field.dim() + (field.has_pressure() ? 1 : 0);
    w.u8(std::uint8_t(field.dim()));
    w.u8(std::uint8_t(channels));
    w.u16(0);
    for (int a = 0; a < field.dim(); ++a) w.u32(std::uint32_t(field.grid.shape[a]));
    w.f64(field.grid.box_length);
    w.u32(std::uint32_t(field.times.size()));
    w.f64_array(field.times);
    for (std::size_t t = 0; t < field.times.size(); ++t) {
        for (int c = 0; c < field.dim(); ++c) w.f64_array(field.velocity[t][c]);
        if (field.has_pressure()) w.f64_array(field.pressure[t]);
    }
    w.close();
}

SampledField load_field(const std::string& path) {
    Reader r(path);
    char magic[6];
    r.bytes(magic, 6, "magic");
    if (std::memcmp(magic, kFieldMagic, 6) != 0) throw ParseError("bad magic", 0);
    const int n = r.u8("dimension");
    if (n < 2 || n > 3) throw ParseError("unsupported dimension " + std::to_string(n), 6);
    const int channels = r.u8("channel count");
    if (channels != n && channels != n + 1)
        throw ParseError("channel count must be n or n+1", 7);
    if (r.u16("reserved") != 0) throw ParseError("nonzero reserved word", 8);
    std::array<int, 3> shape = {1, 1, 1};
    for (int a = 0; a < n; ++a) {
        std::uint32_t s = r.u32("grid size");
        if (s == 0) throw ParseError("zero grid size", r.offset() - 4);
        shape[a] = int(s);
    }
    const double L = r.f64("box length");
    if (!(L > 0)) throw ParseError("nonpositive box length", r.offset() - 8);
    SampledField field;
    field.grid = PeriodicGrid(n, shape, L);
    const std::uint32_t T = r.u32("time count");
    field.times.resize(T);
    {
        std::uint64_t times_start = r.offset();
        r.f64_array(field.times, "times");
        for (std::size_t t = 0; t < field.times.size(); ++t) {
            if (std::isnan(field.times[t]))
                throw ParseError("NaN time stamp", times_start + 8 * t);
            if (t > 0 && !(field.times[t] > field.times[t - 1]))
                throw ParseError("non-monotone times", times_start + 8 * t);
            if (field.times[t] < -1.0 || field.times[t] > 0.0)
                throw ParseError("time stamp outside [-1, 0]", times_start + 8 * t);
        }
    }
    const std::size_t cells = field.grid.size();
    for (std::uint32_t t = 0; t < T; ++t) {
        field.velocity.emplace_back();
        for (int c = 0; c < n; ++c) {
            std::vector<double> comp(cells);
            std::uint64_t start = r.offset();
            r.f64_array(comp, "velocity block");
            check_no_nan(comp, start, "velocity block");
            field.velocity.back().push_back(std::move(comp));
        }
        if (channels == n + 1) {
            std::vector<double> p(cells);
            std::uint64_t start = r.offset();
            r.f64_array(p, "pressure block");
            check_no_nan(p, start, "pressure block");
            field.pressure.push_back(std::move(p));
        }
    }
    field.validate_structure();
    return field;
}

void save_measure(const SampledMeasure& m, const std::string& path) {
    m.validate();
    Writer w(path);
    w.bytes(kMeasureMagic, 6);
    w.u8(std::uint8_t(m.grid.n));
    w.u8(1);
    w.u16(0);
    for (int a = 0; a < m.grid.n; ++a) w.u32(std::uint32_t(m.grid.shape[a]));
    w.f64(m.grid.box_length);
    w.u32(std::uint32_t(m.atoms.size()));
    if (m.density.empty()) {
        std::vector<double> zeros(m.grid.size(), 0.0);
        w.f64_array(zeros);
    } else {
        w.f64_array(m.density);
    }
    for (const auto& a : m.atoms) {
        for (int ax = 0; ax < m.grid.n; ++ax) w.f64(a.position[ax]);
        w.f64(a.weight);
    }
    w.close();
}

SampledMeasure load_measure(const std::string& path) {
    Reader r(path);
    char magic[6];
    r.bytes(magic, 6, "magic");
    if (std::memcmp(magic, kMeasureMagic, 6) != 0) throw ParseError("bad magic", 0);
    const int n = r.u8("dimension");
    if (n < 1 || n > 3) throw ParseError("unsupported dimension " + std::to_string(n), 6);
    if (r.u8("channel count") != 1) throw ParseError("measure channel count must be 1", 7);
    if (r.u16("reserved") != 0) throw ParseError("nonzero reserved word", 8);
    std::array<int, 3> shape = {1, 1, 1};
    for (int a = 0; a < n; ++a) {
        std::uint32_t s = r.u32("grid size");
        if (s == 0) throw ParseError("zero grid size", r.offset() - 4);
        shape[a] = int(s);
    }
    const double L = r.f64("box length");
    if (!(L > 0)) throw ParseError("nonpositive box length", r.offset() - 8);
    SampledMeasure m;
    m.grid = PeriodicGrid(n, shape, L);
    const std::uint32_t atom_count = r.u32("atom count");
    m.density.resize(m.grid.size());
    std::uint64_t dens_start = r.offset();
    r.f64_array(m.density, "density grid");
    for (std::size_t i = 0; i < m.density.size(); ++i) {
        if (std::isnan(m.density[i])) throw ParseError("NaN density", dens_start + 8 * i);
        if (m.density[i] < 0) throw ParseError("negative density", dens_start + 8 * i);
    }
    for (std::uint32_t a = 0; a < atom_count; ++a) {
        SampledMeasure::Atom atom{{0, 0, 0}, 0};
        std::uint64_t start = r.offset();
        for (int ax = 0; ax < n; ++ax) atom.position[ax] = r.f64("atom position");
        atom.weight = r.f64("atom weight");
        if (std::isnan(atom.weight) || atom.weight <= 0)
            throw ParseError("nonpositive atom weight", start + 8 * std::uint64_t(n));
        for (int ax = 0; ax < n; ++ax)
            if (std::isnan(atom.position[ax]) || atom.position[ax] < 0 ||
                atom.position[ax] >= L)
                throw ParseError("atom outside the box", start + 8 * std::uint64_t(ax));
        m.atoms.push_back(atom);
    }
    m.validate();
    return m;
}

void export_scalar_csv(const SampledField& field, int time_index, int channel,
                       const std::string& path) {
    if (time_index < 0 || std::size_t(time_index) >= field.times.size())
        throw std::invalid_argument("export_scalar_csv: bad time index");
    const bool want_pressure = (channel == field.dim());
    if (channel < 0 || channel > field.dim() || (want_pressure && !field.has_pressure()))
        throw std::invalid_argument("export_scalar_csv: bad channel");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const auto& g = field.grid;
    out << (g.n == 3 ? "i,j,k,value\n" : "i,j,value\n");
    const auto& data =
        want_pressure ? field.pressure[time_index] : field.velocity[time_index][channel];
    char buf[64];
    for (int i = 0; i < g.shape[0]; ++i)
        for (int j = 0; j < g.shape[1]; ++j)
            for (int k = 0; k < g.shape[2]; ++k) {
                std::snprintf(buf, sizeof buf, "%.17g", data[g.index(i, j, k)]);
                if (g.n == 3)
                    out << i << ',' << j << ',' << k << ',' << buf << '\n';
                else
                    out << i << ',' << j << ',' << buf << '\n';
            }
}

}  // namespace emtk
