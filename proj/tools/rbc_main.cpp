#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rbc/jsonio.hpp"
#include "rbc/verify.hpp"

namespace {

int write_output(const std::string& bytes, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << bytes;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot open output file " << out_path << "\n";
        return 2;
    }
    f << bytes;
    return 0;
}

std::string render(const rbc::json& j, const std::string& format) {
    if (format == "pretty") return j.dump(2) + "\n";
    return j.dump() + "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Depth-zero base change for ramified U(2,1): finite-level tables, "
                 "verifications, and the packet catalog"};
    app.require_subcommand(1);

    int q = 5;
    std::string format = "json";
    std::string omega = "plus";
    std::string out_path;
    app.add_option("--q", q, "residue field size (5, 7, 9, 11, 13)");
    app.add_option("--format", format, "json | csv | pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("--omega", omega, "choice of the extension Omega")
        ->check(CLI::IsMember({"plus", "minus"}));
    app.add_option("--out", out_path, "write output to a file");

    std::string table_target;
    auto* table_cmd = app.add_subcommand("table", "emit a character table");
    table_cmd->add_option("target", table_target, "group name (SL2, GL2, PGL2, O21, SO21, O2, "
                                                  "SO2, GL2xGL1, SL2xPM, GF, TNS, GL1, PM)")
        ->required();

    std::string check_name;
    auto* verify_cmd = app.add_subcommand("verify", "run a named check suite");
    verify_cmd->add_option("check", check_name,
                           "finite-torus | shintani | dl-formula | a-packet-values | "
                           "jl-uniqueness | orthogonality")
        ->required();

    auto* packets_cmd = app.add_subcommand("packets", "emit the depth-zero packet catalog");
    bool with_ktype = false;
    packets_cmd->add_flag("--ktype", with_ktype, "include K-type compatibility verdicts");

    auto* lift_cmd = app.add_subcommand("lift", "emit the eps-lifting of rational series");
    auto* all_cmd = app.add_subcommand("all", "run every check and emit the catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (!rbc::supported_q(q)) {
        std::cerr << "unsupported q: " << q << "\n";
        return 2;
    }

    try {
        if (table_cmd->parsed()) {
            auto g = rbc::build_group(table_target, q);
            rbc::CharTable t = rbc::char_table(*g);
            rbc::json j = rbc::table_to_json(t);
            // Orthogonality stamp.
            bool ortho = true;
            for (uint32_t i = 0; i < t.irr.size() && ortho; ++i)
                for (uint32_t k = i; k < t.irr.size() && ortho; ++k) {
                    rbc::Cyc ip = rbc::inner_product(t.irr[i], t.irr[k]);
                    ortho = (i == k) ? (ip == rbc::Cyc(1)) : ip.is_zero();
                }
            j["orthogonality"] = ortho ? "exact" : "violated";
            return write_output(render(j, format), out_path);
        }

        if (verify_cmd->parsed()) {
            rbc::json j;
            if (check_name == "finite-torus")
                j = rbc::verify_finite_torus(q);
            else if (check_name == "shintani")
                j = rbc::verify_shintani(q);
            else if (check_name == "dl-formula")
                j = rbc::verify_dl_formula(q);
            else if (check_name == "a-packet-values")
                j = rbc::verify_a_packet_values(q);
            else if (check_name == "jl-uniqueness")
                j = rbc::verify_jl_uniqueness(q);
            else if (check_name == "orthogonality")
                j = rbc::verify_orthogonality(q);
            else {
                std::cerr << "unknown check: " << check_name << "\n";
                return 2;
            }
            int rc = write_output(render(j, format), out_path);
            if (rc) return rc;
            if (!rbc::report_passed(j)) {
                std::cerr << j.dump() << "\n";
                return 1;
            }
            return 0;
        }

        if (packets_cmd->parsed()) {
            rbc::PacketOptions opt{q, omega == "plus" ? +1 : -1};
            auto pk = rbc::enumerate_packets("U21", opt);
            if (format == "csv")
                return write_output(rbc::counts_to_csv(rbc::packet_counts(q), q), out_path);
            rbc::json j = rbc::catalog_to_json(pk, opt, with_ktype && q == 5);
            j["counts_csv"] = rbc::counts_to_csv(rbc::packet_counts(q), q);
            return write_output(render(j, format), out_path);
        }

        if (lift_cmd->parsed()) {
            rbc::json arr = rbc::json::array();
            for (const std::string& grp : {"SL2", "SL2xPM", "SO21"}) {
                long n = q + 1;
                for (long b = 0; 2 * b <= n; ++b) {
                    auto lab = rbc::canonical_series(grp, q, rbc::CyclicTorus::NonsplitS, b, 0);
                    if (lab.chi_exp != b) continue;
                    auto lift = rbc::epsilon_lift_series(lab);
                    arr.push_back(rbc::json{{"input", lab.str()}, {"output", lift.str()}});
                }
                for (long b = 0; 2 * b <= q - 1; ++b) {
                    auto lab = rbc::canonical_series(grp, q, rbc::CyclicTorus::SplitM, b, 0);
                    if (lab.chi_exp != b) continue;
                    auto lift = rbc::epsilon_lift_series(lab);
                    arr.push_back(rbc::json{{"input", lab.str()}, {"output", lift.str()}});
                }
            }
            rbc::json j{{"schema", 1}, {"q", q}, {"lifts", arr}};
            return write_output(render(j, format), out_path);
        }

        if (all_cmd->parsed()) {
            rbc::json j{{"schema", 1}, {"q", q}};
            j["finite_torus"] = rbc::verify_finite_torus(q);
            j["orthogonality"] = rbc::verify_orthogonality(q);
            j["dl_formula"] = rbc::verify_dl_formula(q);
            if (q == 5 || q == 9) j["shintani"] = rbc::verify_shintani(q);
            j["a_packet_values"] = rbc::verify_a_packet_values(q);
            j["jl_uniqueness"] = rbc::verify_jl_uniqueness(q);
            rbc::PacketOptions opt{q, omega == "plus" ? +1 : -1};
            j["catalog"] = rbc::catalog_to_json(rbc::enumerate_packets("U21", opt), opt, q == 5);
            bool pass = true;
            for (const char* k :
                 {"finite_torus", "orthogonality", "dl_formula", "a_packet_values",
                  "jl_uniqueness"})
                pass = pass && rbc::report_passed(j[k]);
            if (q == 5 || q == 9) pass = pass && rbc::report_passed(j["shintani"]);
            j["verdict"] = pass ? "PASS" : "FAIL";
            int rc = write_output(render(j, format), out_path);
            if (rc) return rc;
            if (!pass) {
                std::cerr << "one or more checks failed\n";
                return 1;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
