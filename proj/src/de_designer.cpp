#include "ldpcq/de_designer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldpcq {

namespace {

int ceil_log2(int v) {
    int b = 0;
    while ((1 << b) < v) ++b;
    return b;
}

// Predicted-MI gap below which table design stops tracking the evolution.
// Near saturation the evolved pmfs degenerate and fitted tables turn into
// noise; real decoders also deviate from the ideal trajectory well before
// this point, so the last clean iteration's tables are reused instead.
constexpr double kFreezeMiGap = 1e-3;

int mim_acc_cap(int wp, int dv) {
    int bits = wp + ceil_log2(dv + 1);
    return (1 << (bits - 1)) - 1;
}

double max_finite_abs_llr(const JointPmf& pmf) {
    double m = 0;
    for (size_t i = 0; i < pmf.size(); ++i) {
        double l = pmf.llr(i);
        if (std::isfinite(l)) m = std::max(m, std::abs(l));
    }
    return m;
}

// Information-optimal symmetric magnitude thresholds on the accumulated
// integer soft-value axis (exact DP), converted to integer boundaries with
// the same >=-boundary cell semantics.
std::pair<VnQuantizer, JointPmf> design_vn_vq(const JointPmf& y_pmf, int w) {
    VnQuantizer q;
    q.wbits = w;
    if (y_pmf.size() < static_cast<size_t>(alphabet_size(w))) {
        // too few distinct accumulator values to cut; keep them apart 1:1
        std::vector<long long> pos;
        for (size_t i = 0; i < y_pmf.size(); ++i)
            if (y_pmf.value[i] > 0) pos.push_back(std::llround(y_pmf.value[i]));
        std::sort(pos.begin(), pos.end());
        for (size_t i = 0; i + 1 < pos.size(); ++i)
            q.bounds.push_back(static_cast<int>((pos[i] + pos[i + 1] + 1) / 2));
        long long top = pos.empty() ? 1 : pos.back();
        while (q.bounds.size() + 1 < static_cast<size_t>(max_magnitude(w)))
            q.bounds.push_back(static_cast<int>(++top));
        JointPmf msg = apply_vn_quantizer(q, y_pmf);
        msg.normalize();
        return {q, msg};
    }
    auto res = design_mim_quantizer(y_pmf, w, /*symmetric=*/true);
    for (double b : res.quantizer.boundaries)
        if (b > 0) q.bounds.push_back(static_cast<int>(std::ceil(b)));
    JointPmf msg = apply_vn_quantizer(q, y_pmf);
    msg.normalize();  // undo accumulated float drift
    return {q, msg};
}

// Box-plus reliability table |phi_c|: scaled -log tanh(|L|/2) per level,
// minimum magnitude 1 so the sign survives in the summed domain.
ReconTable make_boxplus_table(const JointPmf& msg_pmf, int w, int wp) {
    int half = max_magnitude(w);
    int mag_cap = (1 << (wp - 1)) - 1;
    ReconTable t;
    t.wbits = w;
    t.wp_bits = wp;
    t.mag.assign(half, 1);
    std::vector<double> rel(half, 0);
    double rel_max = 0;
    auto level = [&](int label) -> std::pair<double, double> {
        for (size_t i = 0; i < msg_pmf.size(); ++i)
            if (std::llround(msg_pmf.value[i]) == label) return {msg_pmf.p0[i], msg_pmf.p1[i]};
        return {0, 0};
    };
    for (int m = 1; m <= half; ++m) {
        auto [pp0, pp1] = level(m);
        auto [np0, np1] = level(-m);
        double num = pp0 + np1, den = pp1 + np0;
        double llr = (num > 0 && den > 0) ? std::log(num / den) : 40.0;
        llr = std::max(std::abs(llr), 1e-6);
        rel[m - 1] = -std::log(std::tanh(std::min(llr, 40.0) / 2.0));
        rel_max = std::max(rel_max, rel[m - 1]);
    }
    double scale = rel_max > 0 ? mag_cap / rel_max : 1.0;
    for (int m = 1; m <= half; ++m) {
        int v = static_cast<int>(std::lround(scale * rel[m - 1]));
        t.mag[m - 1] = std::min(std::max(v, 1), mag_cap);
    }
    // reliability decreases with level strength
    for (int m = half - 1; m >= 1; --m)
        if (t.mag[m - 1] < t.mag[m]) t.mag[m - 1] = t.mag[m];
    return t;
}

// Sign-magnitude pmf in the summed-reliability domain -> signed reliability
// axis u = sgn * (m_max + 1 - m), on which LLR is increasing.
JointPmf to_reliability_axis(const JointPmf& sum_pmf, long long& m_max_out) {
    long long m_max = 0;
    for (double v : sum_pmf.value) m_max = std::max(m_max, std::llabs(std::llround(v)));
    m_max_out = m_max;
    JointPmf u;
    for (size_t i = 0; i < sum_pmf.size(); ++i) {
        long long v = std::llround(sum_pmf.value[i]);
        long long sgn = v < 0 ? -1 : 1;
        u.push(static_cast<double>(sgn * (m_max + 1 - std::llabs(v))), sum_pmf.p0[i], sum_pmf.p1[i]);
    }
    u.canonicalize();
    return u;
}

struct CnDesign {
    JointPmf msg;  // compressed t^c pmf over T_w
    CnMagQuantizer cq;
};

// Non-uniform box-plus output quantizer via the symmetric DP on the
// reliability axis.
CnDesign design_cn_quantizer_nonuniform(const JointPmf& sum_pmf, int w) {
    long long m_max = 0;
    JointPmf u = to_reliability_axis(sum_pmf, m_max);
    auto res = design_mim_quantizer(u, w, /*symmetric=*/true);
    CnDesign out;
    out.msg = res.compressed;
    out.cq.wbits = w;
    int half = max_magnitude(w);
    // positive boundaries in u, descending u = ascending summed magnitude
    std::vector<double> pos;
    for (double b : res.quantizer.boundaries)
        if (b > 0) pos.push_back(b);
    std::sort(pos.rbegin(), pos.rend());
    out.cq.cell_max.clear();
    for (double b : pos)
        out.cq.cell_max.push_back(m_max + 1 - static_cast<long long>(std::ceil(b)));
    while (out.cq.cell_max.size() < static_cast<size_t>(half) - 1)
        out.cq.cell_max.push_back(out.cq.cell_max.empty() ? m_max : out.cq.cell_max.back());
    return out;
}

JointPmf apply_cn_quantizer(const CnMagQuantizer& cq, const JointPmf& sum_pmf) {
    int half = max_magnitude(cq.wbits);
    JointPmf out;
    std::vector<double> a0(2 * half, 0), a1(2 * half, 0);
    for (size_t i = 0; i < sum_pmf.size(); ++i) {
        long long v = std::llround(sum_pmf.value[i]);
        int mag = cq.apply_mag(std::llabs(v));
        int label = v < 0 ? -mag : mag;
        int idx = label < 0 ? label + half : label + half - 1;
        a0[idx] += sum_pmf.p0[i];
        a1[idx] += sum_pmf.p1[i];
    }
    for (int idx = 0; idx < 2 * half; ++idx)
        out.push(idx < half ? idx - half : idx - half + 1, a0[idx], a1[idx]);
    return out;
}

CnDesign design_cn_quantizer_uniform(const JointPmf& sum_pmf, int w) {
    long long m_max = 0;
    for (double v : sum_pmf.value) m_max = std::max(m_max, std::llabs(std::llround(v)));
    int half = max_magnitude(w);
    CnDesign best;
    double best_mi = -1;
    for (int s = 0; s <= 12; ++s) {
        long long step = 1LL << s;
        for (long long o = 0; o < step && o <= m_max; o += std::max<long long>(1, step / 8)) {
            CnMagQuantizer cq;
            cq.wbits = w;
            for (int k = 1; k <= half - 1; ++k) cq.cell_max.push_back(o + k * step - 1);
            JointPmf msg = apply_cn_quantizer(cq, sum_pmf);
            double mi = mutual_information(msg);
            if (mi > best_mi + 1e-13) {
                best_mi = mi;
                best.msg = msg;
                best.cq = cq;
            }
        }
    }
    return best;
}

struct Evolver {
    int w, wp, dv, dc;
    CnKind kernel;
    double llr_scale = 1, llr_cap = 1;

    ReconTable phi_v_for(const JointPmf& msg) const {
        return make_recon_table(msg, w, wp, llr_scale, llr_cap, 1);
    }

    // Check-node layer output from d-1 i.i.d. inputs, with the kernel's
    // compression; fills the stage's phi_c/cq for box-plus kernels.
    JointPmf cn_layer(const std::vector<JointPmf>& inputs, StageTables& st) const {
        if (kernel == CnKind::BoxplusNonUniform || kernel == CnKind::BoxplusUniform) {
            st.phi_c = make_boxplus_table(inputs.front(), w, wp);
            JointPmf acc = recon_pmf(inputs[0], st.phi_c);
            for (size_t i = 1; i < inputs.size(); ++i)
                acc = pmf_of_cn_pair(acc, recon_pmf(inputs[i], st.phi_c), PairKernel::SumMagnitude);
            CnDesign d = kernel == CnKind::BoxplusNonUniform
                             ? design_cn_quantizer_nonuniform(acc, w)
                             : design_cn_quantizer_uniform(acc, w);
            st.cq = d.cq;
            return d.msg;
        }
        JointPmf acc = inputs[0];
        for (size_t i = 1; i < inputs.size(); ++i)
            acc = pmf_of_cn_pair(acc, inputs[i], PairKernel::MinMagnitude);
        acc.normalize();
        return acc;
    }
};

DecoderProgram run_design(const ChannelModel& channel, int dv, int dc, Schedule schedule,
                          const DesignOptions& opt, double cap_factor) {
    if (dv < 2 || dc < 2) throw std::invalid_argument("node degrees must be at least 2");
    if (channel.mi < 1e-12) throw DegenerateDesign("channel carries no information");

    DecoderProgram p;
    p.schedule = schedule;
    p.cn_kernel = opt.kernel;
    p.w = opt.w;
    p.wp = opt.wp;
    p.w_ch = channel.w_ch;
    p.max_iterations = opt.iterations;
    p.d_v = dv;
    p.d_c = dc;
    p.sigma = channel.sigma;
    p.acc_mag_cap = mim_acc_cap(opt.wp, dv);
    p.channel = channel;

    Evolver ev{opt.w, opt.wp, dv, dc, opt.kernel};
    double lch = max_finite_abs_llr(channel.msg_pmf);
    if (lch <= 0) throw DegenerateDesign("degenerate channel pmf");
    ev.llr_cap = cap_factor * lch;
    ev.llr_scale = ((1 << (opt.wp - 1)) - 1) / ev.llr_cap;

    p.phi_ch = make_recon_table(channel.msg_pmf, channel.w_ch, opt.wp, ev.llr_scale, ev.llr_cap,
                                /*min_mag=*/1);
    JointPmf ch_recon = recon_pmf(channel.msg_pmf, p.phi_ch);
    auto [ch_vq, ch_msg] = design_vn_vq(ch_recon, opt.w);
    p.ch_vq = ch_vq;
    JointPmf zero = JointPmf::point_mass(0);

    if (opt.iterations == 0) return p;

    if (schedule == Schedule::Horizontal || schedule == Schedule::HorizontalApp ||
        schedule == Schedule::Flooding) {
        int layers = schedule == Schedule::Flooding ? 1 : dv;
        int extr = dv - 1;  // extrinsic inputs beside the channel term
        std::vector<JointPmf> recon(dv, zero);  // phi_v image of each layer's t^c
        bool frozen = false;
        for (int it = 0; it < opt.iterations; ++it) {
            for (int l = 0; l < layers; ++l) {
                if (frozen) {
                    // distributions are (numerically) stationary; designing
                    // further tables would only fit float noise, so the last
                    // clean iteration's tables are replicated
                    p.stages.push_back(p.stages[p.stages.size() - layers]);
                    continue;
                }
                StageTables st;
                JointPmf y = ch_recon;
                for (int k = 0; k < extr; ++k) {
                    // flooding folds d_v-1 copies of the single layer pmf;
                    // layered excludes the consuming layer's own slot.
                    int src = schedule == Schedule::Flooding ? 0 : (k < l ? k : k + 1);
                    y = pmf_of_sum(y, recon[src]);
                }
                auto [vq, msg] = design_vn_vq(y, opt.w);
                st.vq = vq;
                st.mi_msg = mutual_information(msg);
                // Freeze before designing on a near-degenerate pmf: past this
                // point the evolved distributions no longer resemble what a
                // real (cycle-ridden, finite-length) decoder sees.
                if (it > 0 && st.mi_msg > 1.0 - kFreezeMiGap &&
                    p.stages.size() >= static_cast<size_t>(layers)) {
                    frozen = true;
                    p.stages.push_back(p.stages[p.stages.size() - layers]);
                    continue;
                }
                std::vector<JointPmf> inputs(dc - 1, msg);
                JointPmf tc = ev.cn_layer(inputs, st);
                st.mi_cn = mutual_information(tc);
                st.phi_v = ev.phi_v_for(tc);
                recon[schedule == Schedule::Flooding ? 0 : l] = recon_pmf(tc, st.phi_v);
                p.stages.push_back(std::move(st));
            }
        }
    } else {  // Vertical
        std::vector<JointPmf> tv(dc);  // per-vertical-layer VN message pmfs
        // iteration 1: flooding stage
        {
            StageTables st;
            JointPmf msg = ch_msg;  // flooding start: quantized channel reconstruction
            st.mi_msg = mutual_information(msg);
            std::vector<JointPmf> inputs(dc - 1, msg);
            JointPmf tc = ev.cn_layer(inputs, st);
            st.mi_cn = mutual_information(tc);
            st.phi_v = ev.phi_v_for(tc);
            JointPmf tcr = recon_pmf(tc, st.phi_v);
            JointPmf y = ch_recon;
            for (int k = 0; k < dv - 1; ++k) y = pmf_of_sum(y, tcr);
            auto [vq, m] = design_vn_vq(y, opt.w);
            st.vq = vq;
            for (int l = 0; l < dc; ++l) tv[l] = m;
            p.stages.push_back(std::move(st));
        }
        bool frozen = false;
        for (int it = 1; it < opt.iterations; ++it) {
            for (int l = 0; l < dc; ++l) {
                if (frozen ||
                    (it > 1 && p.stages[p.stages.size() - dc].mi_msg > 1.0 - kFreezeMiGap)) {
                    frozen = true;
                    p.stages.push_back(p.stages[p.stages.size() - dc]);
                    continue;
                }
                StageTables st;
                std::vector<JointPmf> inputs;
                inputs.reserve(dc - 1);
                for (int k = 0; k < dc; ++k)
                    if (k != l) inputs.push_back(tv[k]);
                JointPmf tc = ev.cn_layer(inputs, st);
                st.mi_cn = mutual_information(tc);
                st.phi_v = ev.phi_v_for(tc);
                JointPmf tcr = recon_pmf(tc, st.phi_v);
                JointPmf y = ch_recon;
                for (int k = 0; k < dv - 1; ++k) y = pmf_of_sum(y, tcr);
                auto [vq, m] = design_vn_vq(y, opt.w);
                st.vq = vq;
                st.mi_msg = mutual_information(m);
                tv[l] = m;
                p.stages.push_back(std::move(st));
            }
        }
    }
    p.validate();
    return p;
}

// Scan figure of merit: the running sum of predicted check-output MI rewards
// faster convergence even after the final-iteration MI saturates.
double design_merit(const DecoderProgram& p) {
    double s = 0;
    for (const auto& st : p.stages) s += st.mi_cn;
    return s;
}

DecoderProgram run_design_scan(const ChannelModel& channel, int dv, int dc, Schedule schedule,
                               const DesignOptions& opt) {
    if (opt.llr_cap_factor > 0) return run_design(channel, dv, dc, schedule, opt, opt.llr_cap_factor);
    const double candidates[] = {1.0, 1.5, 2.0, 3.0, 4.0, 6.0};
    DecoderProgram best;
    double best_mi = -1;
    for (double c : candidates) {
        DecoderProgram p = run_design(channel, dv, dc, schedule, opt, c);
        double mi = design_merit(p);
        if (mi > best_mi + 1e-12) {
            best_mi = mi;
            best = std::move(p);
        }
    }
    return best;
}

}  // namespace

JointPmf fold_cn_min(const JointPmf& msg, int degree_minus_one) {
    if (degree_minus_one < 1) throw std::invalid_argument("fold_cn_min: need at least one input");
    JointPmf acc = msg;
    for (int i = 1; i < degree_minus_one; ++i) acc = pmf_of_cn_pair(acc, msg, PairKernel::MinMagnitude);
    return acc;
}

DecoderProgram evolve_horizontal(const ChannelModel& channel, int dv, int dc,
                                 const DesignOptions& opt) {
    return run_design_scan(channel, dv, dc, Schedule::Horizontal, opt);
}

DecoderProgram evolve_vertical(const ChannelModel& channel, int dv, int dc,
                               const DesignOptions& opt) {
    DesignOptions o = opt;
    if (o.kernel == CnKind::Min) o.kernel = CnKind::ThreeMin;
    return run_design_scan(channel, dv, dc, Schedule::Vertical, o);
}

DecoderProgram evolve_flooding(const ChannelModel& channel, int dv, int dc,
                               const DesignOptions& opt) {
    return run_design_scan(channel, dv, dc, Schedule::Flooding, opt);
}

DecoderProgram design_program(double sigma, int dv, int dc, Schedule schedule,
                              const DesignOptions& opt) {
    DesignOptions o = opt;
    // Edge messages carry w bits, but the channel observation is only quantized
    // once; a 4-bit channel front end keeps that loss negligible at any w.
    if (o.w_ch == 0) o.w_ch = std::max(o.w, 4);
    ChannelModel ch = design_channel_quantizer(sigma, o.w_ch, o.grid);
    switch (schedule) {
        case Schedule::Vertical: return evolve_vertical(ch, dv, dc, o);
        case Schedule::Flooding: return evolve_flooding(ch, dv, dc, o);
        case Schedule::Horizontal: return evolve_horizontal(ch, dv, dc, o);
        case Schedule::HorizontalApp: {
            DecoderProgram p = evolve_horizontal(ch, dv, dc, o);
            p.schedule = Schedule::HorizontalApp;
            return p;
        }
    }
    throw std::invalid_argument("unknown schedule");
}

DecoderProgram make_omsq_program(double sigma, int dv, int dc, Schedule schedule, int w,
                                 int offset, int iterations) {
    DecoderProgram p;
    p.schedule = schedule;
    p.cn_kernel = CnKind::Omsq;
    p.w = w;
    p.wp = w;
    p.w_ch = w;
    p.max_iterations = iterations;
    p.d_v = dv;
    p.d_c = dc;
    p.omsq_offset = offset;
    int bits = ceil_log2(dv * (1 << w));
    p.acc_mag_cap = (1 << (bits - 1)) - 1;
    p.sigma = sigma;
    p.channel = design_uniform_channel(sigma, w);
    p.ch_vq = VnQuantizer::identity(w);
    ReconTable ident;
    ident.wbits = w;
    ident.wp_bits = w + 1;
    for (int m = 1; m <= max_magnitude(w); ++m) ident.mag.push_back(m);
    p.phi_ch = ident;
    StageTables st;
    st.vq = VnQuantizer::identity(w);
    st.phi_v = ident;
    p.stages.assign(p.expected_stage_count(), st);
    p.validate();
    return p;
}

}  // namespace ldpcq
