#include <mcon/json_io.hpp>
#include <mcon/sampling.hpp>
#include <mcon/verify.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

using namespace mcon;

namespace {

json read_json(const std::string &path) {
    if (path.empty() || path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw config_error("cannot open " + path);
    return json::parse(in);
}

void write_json(const json &j, const std::string &path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw config_error("cannot open " + path);
    out << j.dump(2) << "\n";
}

backend parse_backend(const std::string &name) {
    if (name == "exact") return backend::exact;
    if (name == "float") return backend::floating;
    throw config_error("backend must be exact or float");
}

json sample_one(const std::string &kind, rng &r, int n, backend tag) {
    if (kind == "fuchsian") {
        pole_config poles = sample_poles(r, 4, tag);
        auto th = sample_sl2_theta(r, true, tag);
        return to_json(sample_fuchsian_system(r, th, poles));
    }
    if (kind == "connection") {
        pole_config poles = sample_poles(r, n, tag);
        if (n == 4) return to_json(sample_connection(r, bundle_type(0, 1), poles, tag));
        auto sp = sample_chart_spectral(r, n, tag);
        auto pt = sample_garnier_point(r, poles, tag);
        log_connection nf = garnier_normal_form(pt, sp, poles);
        log_connection cur = nf;
        for (const auto &q : nf.apparent) cur = elm_minus_apparent(cur, q);
        return to_json(renormalize_to_birkhoff(cur, bundle_type(0, 1)));
    }
    if (kind == "pqpoint") {
        pole_config poles = sample_poles(r, 4, tag);
        spectral_data sp = sample_chart_spectral(r, 4, tag);
        json j = to_json(sample_interior_pq(r, poles, tag));
        json theta = json::array();
        for (int i = 0; i < 4; ++i)
            theta.push_back(json::array({to_json(sp.plus(i)), to_json(sp.minus(i))}));
        json t = json::array();
        for (const auto &x : poles.t()) t.push_back(to_json(x));
        return json{{"backend", tag == backend::exact ? "exact" : "float"},
                    {"point", j},
                    {"theta", theta},
                    {"t", t}};
    }
    if (kind == "garnier") {
        pole_config poles = sample_poles(r, n, tag);
        spectral_data sp = sample_chart_spectral(r, n, tag);
        json j = to_json(sample_garnier_point(r, poles, tag));
        json theta = json::array();
        for (int i = 0; i < n; ++i)
            theta.push_back(json::array({to_json(sp.plus(i)), to_json(sp.minus(i))}));
        json t = json::array();
        for (const auto &x : poles.t()) t.push_back(to_json(x));
        j["backend"] = tag == backend::exact ? "exact" : "float";
        j["theta"] = theta;
        j["t"] = t;
        return j;
    }
    throw config_error("kind must be fuchsian|connection|pqpoint|garnier");
}

struct chart_input {
    spectral_data sp;
    pole_config poles;

    static chart_input from(const json &j, backend tag) {
        std::vector<scalar> plus, minus, t;
        for (const auto &pair : j.at("theta")) {
            plus.push_back(scalar_from_json(pair.at(0), tag));
            minus.push_back(scalar_from_json(pair.at(1), tag));
        }
        for (const auto &x : j.at("t")) t.push_back(scalar_from_json(x, tag));
        return {spectral_data(plus, minus), pole_config(t)};
    }
};

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"moduli of rank-2 logarithmic connections on P^1: sampling, verification and charts"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string backend_name = "exact";
    double tol = 1e-9;
    std::uint64_t seed = 1;
    app.add_option("--backend", backend_name, "exact or float")->capture_default_str();
    app.add_option("--tol", tol, "floating relative tolerance")->capture_default_str();
    app.add_option("--seed", seed, "RNG seed")->capture_default_str();

    auto *cmd_sample = app.add_subcommand("sample", "emit a random valid object as JSON");
    std::string kind = "fuchsian", out_path = "-";
    int n = 4, count = 1;
    cmd_sample->add_option("--kind", kind, "fuchsian|connection|pqpoint|garnier")->required();
    cmd_sample->add_option("--n", n, "number of poles")->capture_default_str();
    cmd_sample->add_option("--count", count, "how many samples")->capture_default_str();
    cmd_sample->add_option("--out", out_path, "output file (default stdout)");

    auto *cmd_verify = app.add_subcommand("verify", "run an acceptance suite");
    std::string suite = "all";
    cmd_verify->add_option("--suite", suite, "cubic|gauge|elm|chart|garnier|all")
        ->capture_default_str();

    auto *cmd_transform = app.add_subcommand("transform", "apply a move log to a connection");
    std::string in_path = "-", moves_path, t_out = "-";
    cmd_transform->add_option("--in", in_path, "input connection or fuchsian JSON");
    cmd_transform->add_option("--moves", moves_path, "JSON move list")->required();
    cmd_transform->add_option("--out", t_out, "output file");

    auto *cmd_chart = app.add_subcommand("chart", "the n = 4 (p,q) chart");
    std::string direction = "to-pq", c_in = "-", c_out = "-";
    cmd_chart->add_option("--direction", direction, "to-pq|from-pq|to-cubic")->required();
    cmd_chart->add_option("--in", c_in, "input JSON");
    cmd_chart->add_option("--out", c_out, "output file");

    auto *cmd_garnier = app.add_subcommand("garnier", "the n > 4 normal form");
    std::string g_direction = "coordinates", g_in = "-", g_out = "-";
    int g_n = 5;
    cmd_garnier->add_option("--direction", g_direction, "normal-form|coordinates")->required();
    cmd_garnier->add_option("--n", g_n, "number of poles")->capture_default_str();
    cmd_garnier->add_option("--in", g_in, "input JSON");
    cmd_garnier->add_option("--out", g_out, "output file");

    std::string csv_path;
    cmd_verify->add_option("--emit-csv", csv_path, "write the symplectic-probe samples as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        set_float_tolerance(tol);
        backend tag = parse_backend(backend_name);

        if (cmd_sample->parsed()) {
            rng r(seed);
            if (count == 1) {
                write_json(sample_one(kind, r, n, tag), out_path);
            } else {
                json arr = json::array();
                for (int i = 0; i < count; ++i) arr.push_back(sample_one(kind, r, n, tag));
                write_json(arr, out_path);
            }
            return 0;
        }

        if (cmd_verify->parsed()) {
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                if (!csv) throw config_error("cannot open " + csv_path);
                csv << "q,p,normalized_jacobian\n";
                for (const auto &s : symplectic_probe_samples())
                    csv << s.q << "," << s.p << "," << s.value << "\n";
            }
            auto results = run_suite(suite, seed);
            bool all_pass = true;
            for (const auto &res : results) {
                std::cout << (res.pass ? "[PASS] " : "[FAIL] ") << "criterion " << res.id << " ("
                          << res.seconds << " s): " << res.name << " -- " << res.detail << "\n";
                all_pass = all_pass && res.pass;
            }
            std::cout << (all_pass ? "suite passed" : "suite FAILED") << "\n";
            return all_pass ? 0 : 1;
        }

        if (cmd_transform->parsed()) {
            json jin = read_json(in_path);
            log_connection conn = jin.contains("A")
                                      ? connection_from_fuchsian(fuchsian_from_json(jin, tag))
                                      : connection_from_json(jin, tag);
            auto moves = move_log_from_json(read_json(moves_path), tag);
            size_t index = 0;
            try {
                for (const auto &rec : moves) {
                    conn = replay(conn, {rec});
                    ++index;
                }
            } catch (const error &e) {
                std::cerr << "move " << index << " failed: " << e.what() << "\n";
                return 1;
            }
            json out = to_json(conn);
            out["applied_moves"] = to_json(conn.move_log);
            write_json(out, t_out);
            return 0;
        }

        if (cmd_chart->parsed()) {
            json jin = read_json(c_in);
            if (direction == "to-pq") {
                log_connection conn = connection_from_json(jin, tag);
                write_json(to_json(to_pq(conn)), c_out);
            } else if (direction == "from-pq") {
                auto ctx = chart_input::from(jin, tag);
                pq_point pt = pq_point_from_json(jin.at("point"), tag);
                write_json(to_json(from_pq(pt, ctx.sp, ctx.poles)), c_out);
            } else if (direction == "to-cubic") {
                auto ctx = chart_input::from(jin, tag);
                pq_point pt = pq_point_from_json(jin.at("point"), tag);
                bridge_result br = link_to_fuchsian(pt, ctx.sp, ctx.poles);
                if (br.on_f2_line)
                    write_json(json{{"f2_c0", to_json(br.c0)}}, c_out);
                else
                    write_json(to_json(br.point), c_out);
            } else {
                throw config_error("direction must be to-pq|from-pq|to-cubic");
            }
            return 0;
        }

        if (cmd_garnier->parsed()) {
            json jin = read_json(g_in);
            if (g_direction == "normal-form") {
                auto ctx = chart_input::from(jin, tag);
                garnier_point pt = garnier_point_from_json(jin, tag);
                write_json(to_json(garnier_normal_form(pt, ctx.sp, ctx.poles)), g_out);
            } else if (g_direction == "coordinates") {
                log_connection conn = connection_from_json(jin, tag);
                write_json(to_json(garnier_coordinates(conn)), g_out);
            } else {
                throw config_error("direction must be normal-form|coordinates");
            }
            return 0;
        }
    } catch (const error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
