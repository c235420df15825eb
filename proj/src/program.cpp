#include "ldpcq/program.hpp"

#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ldpcq {

namespace {

constexpr char kMagic[8] = {'Q', 'L', 'D', 'P', 'C', 'D', 'E', 'C'};
constexpr uint32_t kVersion = 3;

template <typename T>
void put(std::ostream& out, T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));  // little-endian host
}

template <typename T>
T get(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw std::runtime_error("program file truncated");
    return v;
}

void put_doubles(std::ostream& out, const std::vector<double>& v) {
    put<uint32_t>(out, static_cast<uint32_t>(v.size()));
    for (double x : v) put(out, x);
}

std::vector<double> get_doubles(std::istream& in) {
    auto n = get<uint32_t>(in);
    std::vector<double> v(n);
    for (auto& x : v) x = get<double>(in);
    return v;
}

void put_pmf(std::ostream& out, const JointPmf& p) {
    put_doubles(out, p.value);
    put_doubles(out, p.p0);
    put_doubles(out, p.p1);
}

JointPmf get_pmf(std::istream& in) {
    JointPmf p;
    p.value = get_doubles(in);
    p.p0 = get_doubles(in);
    p.p1 = get_doubles(in);
    if (p.p0.size() != p.value.size() || p.p1.size() != p.value.size())
        throw std::runtime_error("program file corrupt: pmf size mismatch");
    return p;
}

void put_recon(std::ostream& out, const ReconTable& t) {
    put<uint8_t>(out, static_cast<uint8_t>(t.wbits));
    put<uint8_t>(out, static_cast<uint8_t>(t.wp_bits));
    put<uint32_t>(out, static_cast<uint32_t>(t.mag.size()));
    for (int m : t.mag) put<int32_t>(out, m);
}

ReconTable get_recon(std::istream& in) {
    ReconTable t;
    t.wbits = get<uint8_t>(in);
    t.wp_bits = get<uint8_t>(in);
    auto n = get<uint32_t>(in);
    t.mag.resize(n);
    for (auto& m : t.mag) m = get<int32_t>(in);
    return t;
}

}  // namespace

const char* to_string(Schedule s) {
    switch (s) {
        case Schedule::Flooding: return "flooding";
        case Schedule::Horizontal: return "horizontal";
        case Schedule::HorizontalApp: return "horizontal-app";
        case Schedule::Vertical: return "vertical";
    }
    return "?";
}

const char* to_string(CnKind k) {
    switch (k) {
        case CnKind::Min: return "min";
        case CnKind::ThreeMin: return "3min";
        case CnKind::BoxplusNonUniform: return "boxplus-nonuniform";
        case CnKind::BoxplusUniform: return "boxplus-uniform";
        case CnKind::Omsq: return "omsq";
    }
    return "?";
}

Schedule schedule_from_string(const std::string& s) {
    if (s == "flooding") return Schedule::Flooding;
    if (s == "horizontal") return Schedule::Horizontal;
    if (s == "horizontal-app") return Schedule::HorizontalApp;
    if (s == "vertical") return Schedule::Vertical;
    throw std::invalid_argument("unknown schedule: " + s);
}

CnKind cn_kind_from_string(const std::string& s) {
    if (s == "min") return CnKind::Min;
    if (s == "3min") return CnKind::ThreeMin;
    if (s == "boxplus-nonuniform") return CnKind::BoxplusNonUniform;
    if (s == "boxplus-uniform") return CnKind::BoxplusUniform;
    if (s == "omsq") return CnKind::Omsq;
    throw std::invalid_argument("unknown check-node kernel: " + s);
}

size_t DecoderProgram::expected_stage_count() const {
    if (max_iterations == 0) return 0;
    if (schedule == Schedule::Vertical)
        return 1 + static_cast<size_t>(max_iterations - 1) * d_c;
    return static_cast<size_t>(max_iterations) * stages_per_iteration();
}

const StageTables& DecoderProgram::stage(int iteration, int layer) const {
    size_t idx;
    if (schedule == Schedule::Vertical)
        idx = iteration == 0 ? 0 : 1 + static_cast<size_t>(iteration - 1) * d_c + layer;
    else
        idx = static_cast<size_t>(iteration) * stages_per_iteration() + layer;
    return stages.at(idx);
}

void DecoderProgram::validate() const {
    if (stages.size() != expected_stage_count())
        throw std::invalid_argument("stage count does not match schedule");
    auto check_vq = [&](const VnQuantizer& q) {
        if (q.wbits != w)
            throw std::invalid_argument("stage quantizer width mismatch");
        if (q.bounds.size() != static_cast<size_t>((1 << (w - 1)) - 1))
            throw std::invalid_argument("stage quantizer boundary count mismatch");
        for (size_t k = 1; k < q.bounds.size(); ++k)
            if (q.bounds[k] <= q.bounds[k - 1])
                throw std::invalid_argument("stage quantizer boundaries not ascending");
    };
    check_vq(ch_vq);
    for (const auto& st : stages) check_vq(st.vq);
}

void serialize_program(const DecoderProgram& p, std::ostream& out) {
    out.write(kMagic, sizeof(kMagic));
    put<uint32_t>(out, kVersion);
    put<uint8_t>(out, static_cast<uint8_t>(p.schedule));
    put<uint8_t>(out, static_cast<uint8_t>(p.cn_kernel));
    put<uint8_t>(out, static_cast<uint8_t>(p.w));
    put<uint8_t>(out, static_cast<uint8_t>(p.wp));
    put<uint8_t>(out, static_cast<uint8_t>(p.w_ch));
    put<uint16_t>(out, static_cast<uint16_t>(p.max_iterations));
    put<uint16_t>(out, static_cast<uint16_t>(p.d_v));
    put<uint16_t>(out, static_cast<uint16_t>(p.d_c));
    put<int32_t>(out, p.omsq_offset);
    put<int32_t>(out, p.acc_mag_cap);
    put(out, p.sigma);
    put(out, p.channel.sigma);
    put<uint8_t>(out, static_cast<uint8_t>(p.channel.w_ch));
    put(out, p.channel.mi);
    put_doubles(out, p.channel.quantizer.boundaries);
    put_pmf(out, p.channel.msg_pmf);
    put_recon(out, p.phi_ch);
    put<uint8_t>(out, static_cast<uint8_t>(p.ch_vq.wbits));
    put<uint32_t>(out, static_cast<uint32_t>(p.ch_vq.bounds.size()));
    for (int b : p.ch_vq.bounds) put<int32_t>(out, b);
    put<uint32_t>(out, static_cast<uint32_t>(p.stages.size()));
    for (const auto& st : p.stages) {
        put<uint8_t>(out, static_cast<uint8_t>(st.vq.wbits));
        put<uint32_t>(out, static_cast<uint32_t>(st.vq.bounds.size()));
        for (int b : st.vq.bounds) put<int32_t>(out, b);
        put_recon(out, st.phi_v);
        put_recon(out, st.phi_c);
        put<uint8_t>(out, static_cast<uint8_t>(st.cq.wbits));
        put<uint32_t>(out, static_cast<uint32_t>(st.cq.cell_max.size()));
        for (long long c : st.cq.cell_max) put<int64_t>(out, c);
        put(out, st.mi_msg);
        put(out, st.mi_cn);
    }
    if (!out) throw std::runtime_error("program write failed");
}

DecoderProgram deserialize_program(std::istream& in) {
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("not a decoder program file (bad magic)");
    auto version = get<uint32_t>(in);
    if (version != kVersion)
        throw std::runtime_error("unsupported program version " + std::to_string(version));
    DecoderProgram p;
    p.schedule = static_cast<Schedule>(get<uint8_t>(in));
    p.cn_kernel = static_cast<CnKind>(get<uint8_t>(in));
    p.w = get<uint8_t>(in);
    p.wp = get<uint8_t>(in);
    p.w_ch = get<uint8_t>(in);
    p.max_iterations = get<uint16_t>(in);
    p.d_v = get<uint16_t>(in);
    p.d_c = get<uint16_t>(in);
    p.omsq_offset = get<int32_t>(in);
    p.acc_mag_cap = get<int32_t>(in);
    p.sigma = get<double>(in);
    p.channel.sigma = get<double>(in);
    p.channel.w_ch = get<uint8_t>(in);
    p.channel.mi = get<double>(in);
    p.channel.quantizer.wbits = p.w_ch;
    p.channel.quantizer.boundaries = get_doubles(in);
    p.channel.msg_pmf = get_pmf(in);
    p.phi_ch = get_recon(in);
    p.ch_vq.wbits = get<uint8_t>(in);
    p.ch_vq.bounds.resize(get<uint32_t>(in));
    for (auto& b : p.ch_vq.bounds) b = get<int32_t>(in);
    auto nstages = get<uint32_t>(in);
    p.stages.resize(nstages);
    for (auto& st : p.stages) {
        st.vq.wbits = get<uint8_t>(in);
        st.vq.bounds.resize(get<uint32_t>(in));
        for (auto& b : st.vq.bounds) b = get<int32_t>(in);
        st.phi_v = get_recon(in);
        st.phi_c = get_recon(in);
        st.cq.wbits = get<uint8_t>(in);
        auto ncells = get<uint32_t>(in);
        st.cq.cell_max.resize(ncells);
        for (auto& c : st.cq.cell_max) c = get<int64_t>(in);
        st.mi_msg = get<double>(in);
        st.mi_cn = get<double>(in);
    }
    p.validate();
    return p;
}

void save_program(const DecoderProgram& p, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    serialize_program(p, f);
}

DecoderProgram load_program(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open program file: " + path);
    return deserialize_program(f);
}

void dump_program(const DecoderProgram& p, std::ostream& out) {
    out << "schedule " << to_string(p.schedule) << "\n";
    out << "cn_kernel " << to_string(p.cn_kernel) << "\n";
    out << "w " << p.w << "  w' " << p.wp << "  w_ch " << p.w_ch << "\n";
    out << "iterations " << p.max_iterations << "  d_v " << p.d_v << "  d_c " << p.d_c << "\n";
    out << "sigma " << p.sigma << "  acc_cap " << p.acc_mag_cap;
    if (p.cn_kernel == CnKind::Omsq) out << "  offset " << p.omsq_offset;
    out << "\n";
    out << "channel MI " << p.channel.mi << "\nchannel thresholds";
    for (double b : p.channel.quantizer.boundaries) out << ' ' << b;
    out << "\nphi_ch";
    for (int m : p.phi_ch.mag) out << ' ' << m;
    out << "\nch_vq";
    for (int b : p.ch_vq.bounds) out << ' ' << b;
    out << "\n";
    for (size_t s = 0; s < p.stages.size(); ++s) {
        const auto& st = p.stages[s];
        out << "stage " << s << " vq";
        for (int b : st.vq.bounds) out << ' ' << b;
        out << " phi_v";
        for (int m : st.phi_v.mag) out << ' ' << m;
        if (!st.phi_c.mag.empty()) {
            out << " phi_c";
            for (int m : st.phi_c.mag) out << ' ' << m;
            out << " cq";
            for (long long c : st.cq.cell_max) out << ' ' << c;
        }
        out << " mi_msg " << st.mi_msg << " mi_cn " << st.mi_cn << "\n";
    }
}

}  // namespace ldpcq
