#include "ldpcq/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "ldpcq/de_designer.hpp"

namespace ldpcq {

namespace {

inline int sgn8(int8_t v) { return v < 0 ? -1 : 1; }

inline int sat_add(int acc, int delta, int cap, long long& events) {
    int v = acc + delta;
    if (v > cap) {
        ++events;
        return cap;
    }
    if (v < -cap) {
        ++events;
        return -cap;
    }
    return v;
}

std::vector<uint8_t> hard_from_app(const std::vector<int>& app) {
    std::vector<uint8_t> bits(app.size());
    for (size_t i = 0; i < app.size(); ++i) bits[i] = app[i] < 0 ? 1 : 0;  // tie -> bit 0
    return bits;
}

void check_inputs(const DecoderProgram& p, const QcCode& code,
                  const std::vector<int8_t>& channel_msgs) {
    p.validate();
    if (!code.regular()) throw std::invalid_argument("decoder requires a regular base matrix");
    if (p.d_v != code.dv() || p.d_c != code.dc())
        throw std::invalid_argument("program degrees do not match the code");
    if (channel_msgs.size() != static_cast<size_t>(code.n()))
        throw std::invalid_argument("channel message vector has wrong length");
    int chm = max_magnitude(p.w_ch);
    for (int8_t t : channel_msgs) {
        int a = std::abs(t);
        if (a < 1 || a > chm) throw std::invalid_argument("channel label outside the alphabet");
    }
}

// Extrinsic check-node outputs for one check given its d_c input messages.
// Fills r_out[i] with the reconstructed (w'-domain) output toward input i.
struct CheckWorker {
    std::vector<int8_t> t;
    std::vector<int> nn;
    std::vector<int> rel;  // box-plus reliability per input

    void resize(int dc) {
        t.resize(dc);
        nn.resize(dc);
        rel.resize(dc);
    }

    void outputs(const DecoderProgram& p, const StageTables& st, int dc, int* r_out) {
        if (p.cn_kernel == CnKind::BoxplusNonUniform || p.cn_kernel == CnKind::BoxplusUniform) {
            long long total = 0;
            int sp = 1;
            for (int i = 0; i < dc; ++i) {
                rel[i] = st.phi_c.mag[std::abs(t[i]) - 1];
                total += rel[i];
                sp *= sgn8(t[i]);
            }
            for (int i = 0; i < dc; ++i) {
                int magl = st.cq.apply_mag(total - rel[i]);
                r_out[i] = sp * sgn8(t[i]) * st.phi_v.mag[magl - 1];
            }
            return;
        }
        int min1 = 1 << 20, min2 = 1 << 20, pos = 0, sp = 1;
        for (int i = 0; i < dc; ++i) {
            int m = std::abs(t[i]);
            sp *= sgn8(t[i]);
            if (m < min1) {
                min2 = min1;
                min1 = m;
                pos = i;
            } else if (m < min2) {
                min2 = m;
            }
        }
        for (int i = 0; i < dc; ++i) {
            int m = i == pos ? min2 : min1;
            if (p.cn_kernel == CnKind::Omsq) m = std::max(m - p.omsq_offset, 1);
            r_out[i] = sp * sgn8(t[i]) * st.phi_v.mag[m - 1];
        }
    }
};

DecodeResult decode_flooding(const DecoderProgram& p, const QcCode& code,
                             const std::vector<int8_t>& tch) {
    const int N = code.n(), Z = code.z(), dv = code.dv(), dc = code.dc();
    const int cap = p.acc_mag_cap;
    DecodeResult res;
    std::vector<int> y(N), r(static_cast<size_t>(dv) * N, 0), rn(r.size());
    for (int n = 0; n < N; ++n) y[n] = p.phi_ch.apply(tch[n]);
    CheckWorker cw;
    cw.resize(dc);
    std::vector<int> r_out(dc);

    for (int it = 0; it < p.max_iterations; ++it) {
        const StageTables& st = p.stage(it, 0);
        for (int l = 0; l < dv; ++l) {
            for (int z = 0; z < Z; ++z) {
                for (int i = 0; i < dc; ++i) {
                    int n = code.cn_neighbor(l, z, i);
                    cw.nn[i] = n;
                    cw.t[i] = static_cast<int8_t>(st.vq.apply(y[n] - r[l * N + n]));
                }
                cw.outputs(p, st, dc, r_out.data());
                for (int i = 0; i < dc; ++i) rn[static_cast<size_t>(l) * N + cw.nn[i]] = r_out[i];
            }
        }
        for (int n = 0; n < N; ++n) {
            int yv = p.phi_ch.apply(tch[n]);
            for (int l = 0; l < dv; ++l)
                yv = sat_add(yv, rn[static_cast<size_t>(l) * N + n], cap, res.saturation_events);
            y[n] = yv;
        }
        std::swap(r, rn);
        res.iterations_used = it + 1;
        res.bits = hard_from_app(y);
        int sw = code.syndrome_weight(res.bits);
        res.syndrome_weight_trace.push_back(sw);
        if (sw == 0) {
            res.converged = true;
            break;
        }
    }
    return res;
}

DecodeResult decode_horizontal(const DecoderProgram& p, const QcCode& code,
                               const std::vector<int8_t>& tch, bool iterative_vn) {
    const int N = code.n(), Z = code.z(), dv = code.dv(), dc = code.dc();
    const int cap = p.acc_mag_cap;
    DecodeResult res;
    std::vector<int> y(N);
    std::vector<int16_t> r(static_cast<size_t>(dv) * N, 0);
    for (int n = 0; n < N; ++n) y[n] = p.phi_ch.apply(tch[n]);
    CheckWorker cw;
    cw.resize(dc);
    std::vector<int> r_out(dc);

    for (int it = 0; it < p.max_iterations; ++it) {
        for (int l = 0; l < dv; ++l) {
            const StageTables& st = p.stage(it, l);
            for (int z = 0; z < Z; ++z) {
                for (int i = 0; i < dc; ++i) {
                    int n = code.cn_neighbor(l, z, i);
                    cw.nn[i] = n;
                    int ext;
                    if (iterative_vn) {
                        long long s = p.phi_ch.apply(tch[n]);
                        for (int k = 0; k < dv; ++k)
                            if (k != l) s += r[static_cast<size_t>(k) * N + n];
                        ext = static_cast<int>(s);
                    } else {
                        ext = y[n] - r[static_cast<size_t>(l) * N + n];
                    }
                    cw.t[i] = static_cast<int8_t>(st.vq.apply(ext));
                }
                cw.outputs(p, st, dc, r_out.data());
                for (int i = 0; i < dc; ++i) {
                    int n = cw.nn[i];
                    size_t e = static_cast<size_t>(l) * N + n;
                    y[n] = sat_add(y[n], r_out[i] - r[e], cap, res.saturation_events);
                    r[e] = static_cast<int16_t>(r_out[i]);
                }
            }
        }
        res.iterations_used = it + 1;
        res.bits = hard_from_app(y);
        int sw = code.syndrome_weight(res.bits);
        res.syndrome_weight_trace.push_back(sw);
        if (sw == 0) {
            res.converged = true;
            break;
        }
    }
    return res;
}

// Layer-compressed horizontal decoder: instead of per-edge reconstruction
// values it stores, per layer, each check's two minima, the minimum position,
// and the input signs, and re-derives the old reconstruction value on the next
// visit. Bit-exact with decode_horizontal.
DecodeResult decode_horizontal_app(const DecoderProgram& p, const QcCode& code,
                                   const std::vector<int8_t>& tch) {
    if (p.cn_kernel != CnKind::Min && p.cn_kernel != CnKind::Omsq)
        throw std::invalid_argument("compressed horizontal schedule requires a min-based kernel");
    const int N = code.n(), Z = code.z(), dv = code.dv(), dc = code.dc();
    const int cap = p.acc_mag_cap;
    DecodeResult res;
    std::vector<int> y(N);
    for (int n = 0; n < N; ++n) y[n] = p.phi_ch.apply(tch[n]);
    std::vector<uint8_t> min1(static_cast<size_t>(dv) * Z), min2(min1.size());
    std::vector<int8_t> minpos(min1.size()), sprod(min1.size());
    std::vector<int8_t> esign(static_cast<size_t>(dv) * Z * dc);
    std::vector<int> last_it(dv, -1);
    std::vector<int8_t> t(dc);
    std::vector<int> nn(dc), r_old(dc);

    for (int it = 0; it < p.max_iterations; ++it) {
        for (int l = 0; l < dv; ++l) {
            const StageTables& st = p.stage(it, l);
            const ReconTable* phi_old =
                last_it[l] >= 0 ? &p.stage(last_it[l], l).phi_v : nullptr;
            for (int z = 0; z < Z; ++z) {
                size_t c = static_cast<size_t>(l) * Z + z;
                for (int i = 0; i < dc; ++i) {
                    int n = code.cn_neighbor(l, z, i);
                    nn[i] = n;
                    if (phi_old) {
                        int m = i == minpos[c] ? min2[c] : min1[c];
                        if (p.cn_kernel == CnKind::Omsq) m = std::max(m - p.omsq_offset, 1);
                        r_old[i] = sprod[c] * esign[c * dc + i] * phi_old->mag[m - 1];
                    } else {
                        r_old[i] = 0;
                    }
                    t[i] = static_cast<int8_t>(st.vq.apply(y[n] - r_old[i]));
                }
                int m1 = 1 << 20, m2 = 1 << 20, pos = 0, sp = 1;
                for (int i = 0; i < dc; ++i) {
                    int m = std::abs(t[i]);
                    sp *= sgn8(t[i]);
                    esign[c * dc + i] = static_cast<int8_t>(sgn8(t[i]));
                    if (m < m1) {
                        m2 = m1;
                        m1 = m;
                        pos = i;
                    } else if (m < m2) {
                        m2 = m;
                    }
                }
                min1[c] = static_cast<uint8_t>(m1);
                min2[c] = static_cast<uint8_t>(m2);
                minpos[c] = static_cast<int8_t>(pos);
                sprod[c] = static_cast<int8_t>(sp);
                for (int i = 0; i < dc; ++i) {
                    int m = i == pos ? m2 : m1;
                    if (p.cn_kernel == CnKind::Omsq) m = std::max(m - p.omsq_offset, 1);
                    int r_new = sp * esign[c * dc + i] * st.phi_v.mag[m - 1];
                    y[nn[i]] = sat_add(y[nn[i]], r_new - r_old[i], cap, res.saturation_events);
                }
            }
            last_it[l] = it;
        }
        res.iterations_used = it + 1;
        res.bits = hard_from_app(y);
        int sw = code.syndrome_weight(res.bits);
        res.syndrome_weight_trace.push_back(sw);
        if (sw == 0) {
            res.converged = true;
            break;
        }
    }
    return res;
}

DecodeResult decode_vertical(const DecoderProgram& p, const QcCode& code,
                             const std::vector<int8_t>& tch) {
    const int N = code.n(), M = code.m(), Z = code.z(), dv = code.dv(), dc = code.dc();
    const int cap = p.acc_mag_cap;
    for (int r0 = 0; r0 < dv; ++r0)
        for (int c0 = 0; c0 < dc; ++c0)
            if (code.base().at(r0, c0) < 0)
                throw std::invalid_argument("vertical schedule requires a fully connected base matrix");
    const bool boxplus =
        p.cn_kernel == CnKind::BoxplusNonUniform || p.cn_kernel == CnKind::BoxplusUniform;
    DecodeResult res;
    std::vector<int8_t> tv(static_cast<size_t>(dc) * M);
    std::vector<int> happ(N), rch(N);
    for (int n = 0; n < N; ++n) rch[n] = p.phi_ch.apply(tch[n]);

    // edge messages start as the quantized channel reconstruction (flooding)
    for (int lr = 0; lr < dv; ++lr)
        for (int z = 0; z < Z; ++z) {
            int m = lr * Z + z;
            for (int i = 0; i < dc; ++i)
                tv[static_cast<size_t>(i) * M + m] =
                    static_cast<int8_t>(p.ch_vq.apply(rch[code.cn_neighbor(lr, z, i)]));
        }

    std::vector<ThreeMinTracker> trk;
    std::vector<int8_t> csign;
    std::vector<long long> ctotal;
    std::vector<int> contrib;
    auto rebuild_boxplus = [&](const ReconTable& phi_c) {
        for (int m = 0; m < M; ++m) {
            long long tot = 0;
            int sp = 1;
            for (int l = 0; l < dc; ++l) {
                int8_t t = tv[static_cast<size_t>(l) * M + m];
                sp *= sgn8(t);
                int c = phi_c.mag[std::abs(t) - 1];
                contrib[static_cast<size_t>(l) * M + m] = c;
                tot += c;
            }
            ctotal[m] = tot;
            csign[m] = static_cast<int8_t>(sp);
        }
    };
    if (boxplus) {
        csign.resize(M);
        ctotal.resize(M);
        contrib.resize(static_cast<size_t>(dc) * M);
        rebuild_boxplus(p.stage(0, 0).phi_c);
    } else {
        trk.resize(M);
        for (int m = 0; m < M; ++m) trk[m].rebuild(&tv[m], M, dc);
    }

    // extrinsic reconstruction toward column layer l of check m
    auto extrinsic = [&](const StageTables& st, int m, int l) -> int {
        int8_t own = tv[static_cast<size_t>(l) * M + m];
        if (boxplus) {
            long long s = ctotal[m] - contrib[static_cast<size_t>(l) * M + m];
            int magl = st.cq.apply_mag(s);
            return csign[m] * sgn8(own) * st.phi_v.mag[magl - 1];
        }
        int mag = trk[m].extrinsic_mag(l);
        if (p.cn_kernel == CnKind::Omsq) mag = std::max(mag - p.omsq_offset, 1);
        return trk[m].sign_product * sgn8(own) * st.phi_v.mag[mag - 1];
    };

    std::vector<int> mm(dv), rc(dv);
    for (int it = 0; it < p.max_iterations; ++it) {
        if (it == 0) {
            // flooding pass: all CN outputs from the initial messages, then a
            // simultaneous full variable-node update
            const StageTables& st = p.stage(0, 0);
            std::vector<int8_t> tv_next(tv.size());
            for (int l = 0; l < dc; ++l)
                for (int z = 0; z < Z; ++z) {
                    int n = l * Z + z;
                    int y = rch[n];
                    for (int i = 0; i < dv; ++i) {
                        mm[i] = code.vn_neighbor(l, z, i);
                        rc[i] = extrinsic(st, mm[i], l);
                        y = sat_add(y, rc[i], cap, res.saturation_events);
                    }
                    happ[n] = y;
                    for (int i = 0; i < dv; ++i)
                        tv_next[static_cast<size_t>(l) * M + mm[i]] =
                            static_cast<int8_t>(st.vq.apply(y - rc[i]));
                }
            tv.swap(tv_next);
            if (boxplus)
                rebuild_boxplus(st.phi_c);
            else
                for (int m = 0; m < M; ++m) trk[m].rebuild(&tv[m], M, dc);
        } else {
            for (int l = 0; l < dc; ++l) {
                const StageTables& st = p.stage(it, l);
                for (int z = 0; z < Z; ++z) {
                    int n = l * Z + z;
                    int y = rch[n];
                    for (int i = 0; i < dv; ++i) {
                        mm[i] = code.vn_neighbor(l, z, i);
                        rc[i] = extrinsic(st, mm[i], l);
                        y = sat_add(y, rc[i], cap, res.saturation_events);
                    }
                    happ[n] = y;
                    for (int i = 0; i < dv; ++i) {
                        int m = mm[i];
                        size_t e = static_cast<size_t>(l) * M + m;
                        int8_t t_old = tv[e];
                        int8_t t_new = static_cast<int8_t>(st.vq.apply(y - rc[i]));
                        tv[e] = t_new;
                        if (boxplus) {
                            if (sgn8(t_old) != sgn8(t_new)) csign[m] = -csign[m];
                            int c_new = st.phi_c.mag[std::abs(t_new) - 1];
                            ctotal[m] += c_new - contrib[e];
                            contrib[e] = c_new;
                        } else if (trk[m].replace(l, t_old, t_new, &tv[m], M, dc)) {
                            ++res.threemin_rescans;
                        }
                    }
                }
            }
        }
        res.iterations_used = it + 1;
        res.bits = hard_from_app(happ);
        int sw = code.syndrome_weight(res.bits);
        res.syndrome_weight_trace.push_back(sw);
        if (sw == 0) {
            res.converged = true;
            break;
        }
    }
    return res;
}

}  // namespace

void cn_full_min(const int8_t* in, int d, int8_t* out, int offset) {
    int min1 = 1 << 20, min2 = 1 << 20, pos = 0, sp = 1;
    for (int i = 0; i < d; ++i) {
        int m = std::abs(in[i]);
        sp *= sgn8(in[i]);
        if (m < min1) {
            min2 = min1;
            min1 = m;
            pos = i;
        } else if (m < min2) {
            min2 = m;
        }
    }
    for (int i = 0; i < d; ++i) {
        int m = i == pos ? min2 : min1;
        if (offset > 0) m = std::max(m - offset, 1);
        out[i] = static_cast<int8_t>(sp * sgn8(in[i]) * m);
    }
}

void cn_full_boxplus(const int8_t* in, int d, const ReconTable& phi_c, const CnMagQuantizer& cq,
                     int8_t* out) {
    long long total = 0;
    int sp = 1;
    for (int i = 0; i < d; ++i) {
        total += phi_c.mag[std::abs(in[i]) - 1];
        sp *= sgn8(in[i]);
    }
    for (int i = 0; i < d; ++i) {
        int magl = cq.apply_mag(total - phi_c.mag[std::abs(in[i]) - 1]);
        out[i] = static_cast<int8_t>(sp * sgn8(in[i]) * magl);
    }
}

void vn_full(const int8_t* cn_msgs, int d, int8_t t_ch, const ReconTable& phi_v,
             const ReconTable& phi_ch, const VnQuantizer& vq, int acc_cap, int8_t* out,
             long long* saturations) {
    long long dummy = 0;
    long long& sat = saturations ? *saturations : dummy;
    int y = phi_ch.apply(t_ch);
    for (int i = 0; i < d; ++i) y = sat_add(y, phi_v.apply(cn_msgs[i]), acc_cap, sat);
    for (int i = 0; i < d; ++i)
        out[i] = static_cast<int8_t>(vq.apply(y - phi_v.apply(cn_msgs[i])));
}

void ThreeMinTracker::rebuild(const int8_t* msgs, int stride, int d) {
    nvalid = 0;
    sign_product = 1;
    int keep = std::min(d, 3);
    for (int l = 0; l < d; ++l) {
        int8_t t = msgs[static_cast<size_t>(l) * stride];
        if (t < 0) sign_product = -sign_product;
        uint8_t m = static_cast<uint8_t>(std::abs(t));
        int j = nvalid < keep ? nvalid : keep;
        if (j == keep) {
            if (nvalid == keep && m >= mags[keep - 1]) continue;
            j = keep - 1;
        }
        while (j > 0 && mags[j - 1] > m) {
            mags[j] = mags[j - 1];
            idx[j] = idx[j - 1];
            --j;
        }
        mags[j] = m;
        idx[j] = static_cast<int16_t>(l);
        if (nvalid < keep) ++nvalid;
    }
}

bool ThreeMinTracker::replace(int l, int8_t old_msg, int8_t new_msg, const int8_t* msgs,
                              int stride, int d) {
    if ((old_msg < 0) != (new_msg < 0)) sign_product = -sign_product;
    uint8_t m = static_cast<uint8_t>(std::abs(new_msg));
    int found = -1;
    for (int j = 0; j < nvalid; ++j)
        if (idx[j] == l) {
            found = j;
            break;
        }
    if (found >= 0) {
        for (int j = found; j + 1 < nvalid; ++j) {
            mags[j] = mags[j + 1];
            idx[j] = idx[j + 1];
        }
        --nvalid;
    }
    if (nvalid < 2) {
        rebuild(msgs, stride, d);
        return true;
    }
    // the tracked entries are the exact nvalid smallest among the other layers
    if (m < mags[nvalid - 1] || (nvalid < 3 && m == mags[nvalid - 1])) {
        int j = std::min(nvalid, 2);
        while (j > 0 && mags[j - 1] > m) {
            mags[j] = mags[j - 1];
            idx[j] = idx[j - 1];
            --j;
        }
        mags[j] = m;
        idx[j] = static_cast<int16_t>(l);
        if (nvalid < 3) ++nvalid;
    }
    // otherwise the tracked minima are unaffected by the replacement
    return false;
}

DecodeResult decode(const DecoderProgram& program, const QcCode& code,
                    const std::vector<int8_t>& channel_msgs, const DecodeOptions& opt) {
    check_inputs(program, code, channel_msgs);
    switch (program.schedule) {
        case Schedule::Flooding: return decode_flooding(program, code, channel_msgs);
        case Schedule::Horizontal:
            return decode_horizontal(program, code, channel_msgs, opt.iterative_vn);
        case Schedule::HorizontalApp: return decode_horizontal_app(program, code, channel_msgs);
        case Schedule::Vertical: return decode_vertical(program, code, channel_msgs);
    }
    throw std::invalid_argument("unknown schedule");
}

DecodeResult decode_bp(const QcCode& code, const std::vector<double>& channel_llrs, int max_iter) {
    if (channel_llrs.size() != static_cast<size_t>(code.n()))
        throw std::invalid_argument("llr vector has wrong length");
    const int N = code.n(), Z = code.z(), dv = code.dv(), dc = code.dc();
    auto phi = [](double x) {
        x = std::min(std::max(x, 1e-12), 50.0);
        return -std::log(std::tanh(x / 2.0));
    };
    DecodeResult res;
    std::vector<double> r(static_cast<size_t>(dv) * N, 0), y(N);
    std::vector<double> t(dc);
    std::vector<int> nn(dc);
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> rn(r.size());
        for (int l = 0; l < dv; ++l)
            for (int z = 0; z < Z; ++z) {
                double total = 0;
                int sp = 1;
                for (int i = 0; i < dc; ++i) {
                    int n = code.cn_neighbor(l, z, i);
                    nn[i] = n;
                    double m = channel_llrs[n];
                    for (int k = 0; k < dv; ++k)
                        if (k != l) m += r[static_cast<size_t>(k) * N + n];
                    t[i] = m;
                    if (m < 0) sp = -sp;
                    total += phi(std::abs(m));
                }
                for (int i = 0; i < dc; ++i) {
                    double mag = phi(std::max(total - phi(std::abs(t[i])), 1e-12));
                    int s = sp * (t[i] < 0 ? -1 : 1);
                    rn[static_cast<size_t>(l) * N + nn[i]] = s * mag;
                }
            }
        r.swap(rn);
        for (int n = 0; n < N; ++n) {
            double v = channel_llrs[n];
            for (int l = 0; l < dv; ++l) v += r[static_cast<size_t>(l) * N + n];
            y[n] = v;
        }
        res.iterations_used = it + 1;
        res.bits.resize(N);
        for (int n = 0; n < N; ++n) res.bits[n] = y[n] < 0 ? 1 : 0;
        int sw = code.syndrome_weight(res.bits);
        res.syndrome_weight_trace.push_back(sw);
        if (sw == 0) {
            res.converged = true;
            break;
        }
    }
    return res;
}

DecodeResult decode_omsq(const QcCode& code, double sigma, int w, int offset, Schedule schedule,
                         int max_iter, const std::vector<int8_t>& channel_msgs) {
    DecoderProgram p = make_omsq_program(sigma, code.dv(), code.dc(), schedule, w, offset, max_iter);
    return decode(p, code, channel_msgs);
}

std::vector<int8_t> quantize_channel(const DecoderProgram& program, const std::vector<double>& y) {
    std::vector<int8_t> t(y.size());
    for (size_t i = 0; i < y.size(); ++i)
        t[i] = static_cast<int8_t>(program.channel.quantize(y[i]));
    return t;
}

}  // namespace ldpcq
