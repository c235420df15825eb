#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ldpcq/complexity.hpp"
#include "ldpcq/de_designer.hpp"
#include "ldpcq/simulate.hpp"

using namespace ldpcq;

namespace {

QcCode load_code(const std::string& path) { return QcCode(BaseMatrix::load(path)); }

int cmd_info(const std::string& code_path) {
    QcCode code = load_code(code_path);
    std::cout << "n " << code.n() << "\nm " << code.m() << "\nz " << code.z() << "\nd_v "
              << code.dv() << "\nd_c " << code.dc() << "\nedges " << code.edges() << "\nrate "
              << code.rate() << "\nregular " << (code.regular() ? "yes" : "no") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarse-quantized QC-LDPC decoding toolkit"};
    app.set_config("--config", "", "read options from a key=value file");
    app.require_subcommand(1);

    std::string code_path, program_path, out_path;

    auto* info = app.add_subcommand("info", "print code statistics");
    info->add_option("--code", code_path, "base matrix file")->required();

    auto* design = app.add_subcommand("design", "design a decoder program");
    std::string schedule_s = "horizontal", kernel_s = "min";
    DesignOptions dopt;
    double ebn0 = 4.0;
    int omsq_offset = 1;
    bool omsq = false;
    design->add_option("--code", code_path, "base matrix file")->required();
    design->add_option("-o,--output", out_path, "program output file")->required();
    design->add_option("--schedule", schedule_s, "flooding|horizontal|horizontal-app|vertical");
    design->add_option("--kernel", kernel_s, "min|3min|boxplus-nonuniform|boxplus-uniform");
    design->add_option("--ebn0", ebn0, "design point in dB");
    design->add_option("-w", dopt.w, "message bits");
    design->add_option("--wp", dopt.wp, "reconstruction bits");
    design->add_option("--w-ch", dopt.w_ch, "channel message bits (default w)");
    design->add_option("--iterations", dopt.iterations, "decoding iterations");
    design->add_option("--cap-factor", dopt.llr_cap_factor, "LLR cap factor (0 = scan)");
    design->add_option("--grid", dopt.grid, "channel discretization grid");
    design->add_flag("--omsq", omsq, "fixed-level offset-min-sum instead of a designed program");
    design->add_option("--offset", omsq_offset, "offset-min-sum offset");

    auto* dump = app.add_subcommand("dump-program", "print program tables");
    dump->add_option("--program", program_path, "program file")->required();

    auto* compl_cmd = app.add_subcommand("complexity", "per-edge gate and memory estimates");
    std::string compl_out;
    compl_cmd->add_option("-o,--output", compl_out, "CSV output file (default stdout)");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo error-rate sweep");
    std::vector<double> ebn0s;
    std::string mode = "program";
    SimOptions sopt;
    int bp_iters = 50;
    long long uncoded_bits = 10'000'000;
    sim->add_option("--code", code_path, "base matrix file");
    sim->add_option("--program", program_path, "program file (mode=program)");
    sim->add_option("--ebn0", ebn0s, "Eb/N0 points in dB")->required();
    sim->add_option("--mode", mode, "program|bp|uncoded");
    sim->add_option("--min-frame-errors", sopt.min_frame_errors, "stop after this many frame errors");
    sim->add_option("--max-codewords", sopt.max_codewords, "hard codeword limit");
    sim->add_option("--block", sopt.block_codewords, "codewords per stopping-check block");
    sim->add_option("--seed", sopt.seed, "noise seed");
    sim->add_option("--threads", sopt.threads, "worker threads");
    sim->add_option("--bp-iterations", bp_iters, "iterations for mode=bp");
    sim->add_option("--uncoded-bits", uncoded_bits, "bits for mode=uncoded");
    sim->add_flag("--iterative-vn", sopt.decode.iterative_vn,
                  "recompute partial variable-node sums instead of tracking them");
    sim->add_option("-o,--output", out_path, "CSV output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (info->parsed()) return cmd_info(code_path);

        if (design->parsed()) {
            QcCode code = load_code(code_path);
            double sigma = sigma_from_ebn0(ebn0, code.rate());
            DecoderProgram p;
            if (omsq) {
                p = make_omsq_program(sigma, code.dv(), code.dc(), schedule_from_string(schedule_s),
                                      dopt.w, omsq_offset, dopt.iterations);
            } else {
                dopt.kernel = cn_kind_from_string(kernel_s);
                p = design_program(sigma, code.dv(), code.dc(), schedule_from_string(schedule_s),
                                   dopt);
            }
            save_program(p, out_path);
            std::cout << "wrote " << out_path << " (" << p.stages.size() << " stages, channel MI "
                      << p.channel.mi << ")\n";
            return 0;
        }

        if (dump->parsed()) {
            dump_program(load_program(program_path), std::cout);
            return 0;
        }

        if (compl_cmd->parsed()) {
            std::ofstream file;
            std::ostream* os = &std::cout;
            if (!compl_out.empty()) {
                file.open(compl_out);
                if (!file) throw std::runtime_error("cannot open " + compl_out);
                os = &file;
            }
            *os << "label,cn_gates,vn_gates,network_gates,total_gates,memory_bits_per_edge\n";
            std::vector<std::string> notes;
            for (const auto& cfg : reference_configurations()) {
                CostBreakdown c = decoder_cost(cfg);
                *os << cfg.label << ',' << c.cn_gates_per_edge << ','
                    << (c.lower_bound ? ">" : "") << c.vn_gates_per_edge << ','
                    << c.network_gates_per_edge << ',' << (c.lower_bound ? ">" : "")
                    << c.total_gates_per_edge << ',' << c.memory_bits_per_edge << '\n';
                for (const auto& n : c.notes) {
                    std::string line = cfg.label + ": " + n;
                    if (std::find(notes.begin(), notes.end(), line) == notes.end())
                        notes.push_back(line);
                }
            }
            std::cerr << "assumptions:\n";
            for (const auto& n : notes) std::cerr << "  " << n << "\n";
            return 0;
        }

        if (sim->parsed()) {
            std::ofstream file;
            std::ostream* os = &std::cout;
            if (!out_path.empty()) {
                file.open(out_path);
                if (!file) throw std::runtime_error("cannot open " + out_path);
                os = &file;
            }
            write_csv_header(*os);
            if (mode == "uncoded") {
                for (double e : ebn0s) write_csv_row(*os, simulate_uncoded_point(e, uncoded_bits, sopt.seed));
                return 0;
            }
            if (code_path.empty()) throw std::invalid_argument("--code is required for this mode");
            QcCode code = load_code(code_path);
            if (mode == "bp") {
                for (double e : ebn0s) write_csv_row(*os, simulate_bp_point(code, e, bp_iters, sopt));
                return 0;
            }
            if (mode != "program") throw std::invalid_argument("unknown mode: " + mode);
            if (program_path.empty())
                throw std::invalid_argument("--program is required for mode=program");
            DecoderProgram p = load_program(program_path);
            for (double e : ebn0s) write_csv_row(*os, simulate_point(p, code, e, sopt));
            return 0;
        }
    } catch (const DegenerateDesign& e) {
        std::cerr << "degenerate design: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
