#include "windtree/cli.hpp"

#include "windtree/cylinders.hpp"
#include "windtree/dynamics.hpp"
#include "windtree/identities.hpp"
#include "windtree/report_io.hpp"
#include "windtree/sv_constants.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace windtree {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string format = "text";
    unsigned threads = 0;
    std::string table;
    long m = 1;
    bool max = false;
    long m_max = 60;
    std::string L = "30";
    std::string csv, summary_csv;
    std::vector<std::string> buckets;
    double t_max = 1e6;
    long n = -1;
    std::uint64_t seed = 1;
    double eps = 1.0;
    long p_max = 8;
    std::string signs;
    bool sweep_all = false;
};

unsigned resolve_threads(unsigned flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("WINDTREE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

WindTreeTable load_input_table(const std::string& spec) {
    if (spec.empty()) throw InputError("--table is required");
    try {
        return table_from_spec(spec);
    } catch (const ParseError& e) {
        throw InputError(std::string("table parse error at ") + e.what());
    } catch (const ValidationError& e) {
        throw InputError(std::string("invalid table: ") + e.what());
    } catch (const std::runtime_error& e) {
        throw InputError(e.what());
    }
}

BigRat parse_length(const std::string& s) {
    try {
        BigRat L = parse_rational(s);
        if (L <= 0) throw InputError("L must be positive");
        return L;
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("bad length: ") + e.what());
    }
}

WindingSignTable parse_signs(const std::string& s) {
    // "h0,h1,h2,h3;v0,v1,v2,v3" indexed by copy i + 2j
    WindingSignTable t;
    auto semi = s.find(';');
    if (semi == std::string::npos) throw InputError("--signs needs 'h;v' lists");
    auto parse4 = [](const std::string& part, std::array<int, 4>& dst) {
        std::stringstream ss(part);
        std::string item;
        for (size_t k = 0; k < 4; ++k) {
            if (!std::getline(ss, item, ',')) throw InputError("--signs needs four entries per quotient");
            int v = std::stoi(item);
            if (v != 1 && v != -1) throw InputError("signs must be +1 or -1");
            dst[k] = v;
        }
    };
    parse4(s.substr(0, semi), t.h);
    parse4(s.substr(semi + 1), t.v);
    return t;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << content;
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
    if (cfg.m < 1) throw InputError("--m must be >= 1");
    long lo = cfg.max ? 1 : cfg.m;
    std::vector<ConstantsBundle> rows;
    for (long m = lo; m <= cfg.m; ++m) rows.push_back(constants_bundle(m));
    if (cfg.format == "json") {
        json arr = json::array();
        for (auto& b : rows) arr.push_back(to_json(b));
        out << arr.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "m,delta,c,c_value,c_area,c_area_value,c_good,c_area_good\n";
        for (auto& b : rows)
            out << b.m << ',' << rat_to_string(b.delta) << ',' << b.c_main.to_string() << ',' << fmt_double(pirational_eval(b.c_main))
                << ',' << b.c_area_main.to_string() << ',' << fmt_double(pirational_eval(b.c_area_main)) << ','
                << b.c_good.to_string() << ',' << b.c_area_good.to_string() << '\n';
    } else {
        for (auto& b : rows) {
            out << "m = " << b.m << "\n";
            out << "  delta      = " << rat_to_string(b.delta) << " = " << fmt_double(b.delta.get_d()) << "\n";
            out << "  c          = " << b.c_main.to_string() << " = " << fmt_double(pirational_eval(b.c_main)) << "\n";
            out << "  c_area     = " << b.c_area_main.to_string() << " = " << fmt_double(pirational_eval(b.c_area_main)) << "\n";
            out << "  c_good     = " << b.c_good.to_string() << " (pocket " << b.c_pocket_good.to_string() << ", dumbbell "
                << b.c_dumbbell_good.to_string() << ")\n";
            out << "  c_area_good= " << b.c_area_good.to_string() << "\n";
        }
    }
    return 0;
}

int cmd_identities(const RunConfig& cfg, std::ostream& out) {
    if (cfg.m_max < 1) throw InputError("--m-max must be >= 1");
    auto reps = verify_identities(cfg.m_max);
    bool ok = true;
    for (auto& r : reps) ok = ok && r.equal;
    if (cfg.format == "json") {
        json arr = json::array();
        for (auto& r : reps) arr.push_back(to_json(r));
        out << json{{"pass", ok}, {"reports", arr}}.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "m,s,direct,closed,equal\n";
        for (auto& r : reps)
            out << r.m << ',' << r.s << ',' << rat_to_string(r.direct) << ',' << rat_to_string(r.closed) << ',' << r.equal << '\n';
    } else {
        for (auto& r : reps)
            if (!r.equal) out << "MISMATCH m=" << r.m << " s=" << r.s << "\n";
        out << (ok ? "PASS" : "FAIL") << ": " << reps.size() << " identities checked for m <= " << cfg.m_max << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
    auto table = load_input_table(cfg.table);
    auto surface = build_surface(table);
    std::vector<BigRat> Ls;
    for (auto& b : cfg.buckets) Ls.push_back(parse_length(b));
    Ls.push_back(parse_length(cfg.L));
    std::sort(Ls.begin(), Ls.end());
    Ls.erase(std::unique(Ls.begin(), Ls.end()), Ls.end());
    std::vector<CylinderRecord> records;
    auto rep = count(surface, Ls, resolve_threads(cfg.threads), cfg.csv.empty() ? nullptr : &records);
    if (!cfg.csv.empty()) {
        std::ostringstream ss;
        write_records_csv(ss, records);
        write_file(cfg.csv, ss.str());
    }
    if (!cfg.summary_csv.empty()) {
        std::ostringstream ss;
        write_count_csv(ss, rep);
        write_file(cfg.summary_csv, ss.str());
    }
    if (cfg.format == "json") {
        out << to_json(rep).dump(2) << "\n";
    } else if (cfg.format == "csv") {
        write_count_csv(out, rep);
    } else {
        out << "table m=" << table.m << " D=" << table.D << " squares=" << surface.origami.n << " directions=" << rep.directions << "\n";
        for (size_t b = 0; b < rep.L.size(); ++b) {
            out << "L=" << rat_to_string(rep.L[b]) << ": N_all=" << rep.N_all[b] << " N_closed=" << rep.N_closed[b]
                << " N_good=" << rep.N_good[b] << " N_bad=" << rep.N_bad[b] << " N_area_good=" << fmt_double(rep.N_area_good[b].get_d())
                << "\n  good by profile:";
            for (auto& [p, v] : rep.good_by_profile) out << " " << p.to_string() << "=" << v[b];
            out << "  pocket_like=" << rep.good_pocket_like[b] << " dumbbell_like=" << rep.good_dumbbell_like[b] << "\n";
        }
    }
    return 0;
}

int cmd_diffuse(const RunConfig& cfg, std::ostream& out) {
    long n = cfg.n < 0 ? 100 : cfg.n;
    if (n < 1) throw InputError("--n must be >= 1");
    if (cfg.t_max < 1e4) throw InputError("--t-max must be >= 1e4");
    auto table = load_input_table(cfg.table);
    auto rep = diffusion_exponent(table, n, cfg.t_max, cfg.seed, resolve_threads(cfg.threads));
    if (!cfg.csv.empty()) {
        std::ostringstream ss;
        write_diffusion_csv(ss, rep);
        write_file(cfg.csv, ss.str());
    }
    if (cfg.format == "json") {
        out << to_json(rep).dump(2) << "\n";
    } else if (cfg.format == "csv") {
        write_diffusion_csv(out, rep);
    } else {
        out << "m=" << rep.m << " n=" << rep.n_directions << " t_max=" << fmt_double(rep.t_max) << " seed=" << rep.seed << "\n";
        out << "mean slope " << fmt_double(rep.mean_slope, 6) << " +- " << fmt_double(rep.stderr_slope, 3)
            << " (delta(m) = " << fmt_double(delta(std::max(1L, rep.m)).get_d(), 6) << ")\n";
    }
    return 0;
}

int cmd_recur(const RunConfig& cfg, std::ostream& out) {
    long n = cfg.n < 0 ? 200 : cfg.n;
    if (n < 1) throw InputError("--n must be >= 1");
    if (!(cfg.eps > 0)) throw InputError("--eps must be positive");
    if (!(cfg.t_max > 0)) throw InputError("--t-max must be positive");
    auto table = load_input_table(cfg.table);
    auto rep = recurrence(table, n, cfg.t_max, cfg.eps, cfg.seed, resolve_threads(cfg.threads));
    if (cfg.format == "json") {
        out << to_json(rep).dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "orbit,return_time\n";
        for (size_t i = 0; i < rep.return_times.size(); ++i)
            out << i << ',' << (std::isfinite(rep.return_times[i]) ? fmt_double(rep.return_times[i]) : "inf") << '\n';
    } else {
        out << "n=" << rep.n_orbits << " t_max=" << fmt_double(rep.t_max) << " eps=" << fmt_double(rep.eps) << " seed=" << rep.seed
            << "\nreturn fraction " << fmt_double(rep.fraction, 6) << "\n";
    }
    return 0;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
    auto table = load_input_table(cfg.table);
    auto surface = build_surface(table);
    WindingSignTable signs = cfg.signs.empty() ? surface.signs : parse_signs(cfg.signs);
    auto rep = lifting_consistency_check(surface, parse_length(cfg.L), signs, cfg.sweep_all, resolve_threads(cfg.threads));
    if (cfg.format == "json") {
        out << to_json(rep).dump(2) << "\n";
    } else {
        for (auto& v : rep.violations) out << "VIOLATION " << v << "\n";
        out << (rep.pass ? "PASS" : "FAIL") << ": " << rep.good_checked << " good cylinders checked, " << rep.closure_checked
            << " cores replayed, " << rep.violations.size() << " violations\n";
    }
    return rep.pass ? 0 : 1;
}

int cmd_search(const RunConfig& cfg, std::ostream& out) {
    auto table = load_input_table(cfg.table);
    auto surface = build_surface(table);
    try {
        auto rec = good_cylinder_search(surface, cfg.p_max);
        if (cfg.format == "json") {
            out << to_json(rec).dump(2) << "\n";
        } else if (cfg.format == "csv") {
            write_records_csv(out, {rec});
        } else {
            out << "good cylinder in direction (" << rec.direction.p << "," << rec.direction.q << ") width " << rec.width
                << " height " << rec.height << " profile " << rec.profile->to_string() << " b=" << rec.deck_orbit->b
                << " n_X=" << rec.deck_orbit->n_X << " pocket_like=" << rec.deck_orbit->pocket_like << "\n";
        }
        return 0;
    } catch (const NotFound& e) {
        out << e.what() << "\n";
        return 1;
    }
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
    auto table = load_input_table(cfg.table);
    auto surface = build_surface(table);
    out << format_table(table);
    out << "# m=" << table.m << " area=" << rat_to_string(table_area(table)) << " squares=" << surface.origami.n
        << " consecutive_reflex=" << has_consecutive_reflex(table) << " singularities:";
    for (auto [len, mult] : singularity_profile(surface.origami)) out << " " << len << "^" << mult;
    out << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wind-tree billiards: Siegel-Veech constants, cylinder counting and diffusion"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--threads", cfg.threads, "Worker threads (default: WINDTREE_THREADS or 1)");

    auto add_table = [&](CLI::App* sub) {
        sub->add_option("--table", cfg.table, "Table file, 'plus', or 'square A B'")->required();
    };
    auto* c_const = app.add_subcommand("constants", "Exact Siegel-Veech constants and diffusion rate");
    c_const->add_option("--m", cfg.m, "Number of obstacle corners / 4")->required();
    c_const->add_flag("--max", cfg.max, "Print all m from 1 to M");

    auto* c_id = app.add_subcommand("identities", "Verify the binomial-sum identities");
    c_id->add_option("--m-max", cfg.m_max, "Largest m");

    auto* c_count = app.add_subcommand("count", "Count cylinders up to length L");
    add_table(c_count);
    c_count->add_option("--L", cfg.L, "Length bound (integer, fraction or decimal)");
    c_count->add_option("--buckets", cfg.buckets, "Additional length bounds");
    c_count->add_option("--csv", cfg.csv, "Per-cylinder CSV output file");
    c_count->add_option("--summary-csv", cfg.summary_csv, "Per-bucket CSV output file");

    auto* c_diff = app.add_subcommand("diffuse", "Estimate the diffusion exponent");
    add_table(c_diff);
    c_diff->add_option("--t-max", cfg.t_max, "Orbit length");
    c_diff->add_option("--n", cfg.n, "Number of random directions");
    c_diff->add_option("--seed", cfg.seed, "RNG seed");
    c_diff->add_option("--csv", cfg.csv, "Per-orbit CSV output file");

    auto* c_rec = app.add_subcommand("recur", "Estimate the return fraction");
    add_table(c_rec);
    c_rec->add_option("--t-max", cfg.t_max, "Orbit length");
    c_rec->add_option("--n", cfg.n, "Number of orbits");
    c_rec->add_option("--seed", cfg.seed, "RNG seed");
    c_rec->add_option("--eps", cfg.eps, "Return radius");

    auto* c_check = app.add_subcommand("check", "Lift consistency checks and billiard closure replay");
    add_table(c_check);
    c_check->add_option("--L", cfg.L, "Length bound");
    c_check->add_option("--signs", cfg.signs, "Override sign table 'h0,h1,h2,h3;v0,v1,v2,v3'");
    c_check->add_flag("--all", cfg.sweep_all, "Replay every cylinder core, not only good ones");

    auto* c_search = app.add_subcommand("search", "Find a good cylinder");
    add_table(c_search);
    c_search->add_option("--p-max", cfg.p_max, "Largest |p|, |q| scanned");

    auto* c_table = app.add_subcommand("table", "Validate a table and print its surface data");
    add_table(c_table);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (c_const->parsed()) return cmd_constants(cfg, out);
        if (c_id->parsed()) return cmd_identities(cfg, out);
        if (c_count->parsed()) return cmd_count(cfg, out);
        if (c_diff->parsed()) return cmd_diffuse(cfg, out);
        if (c_rec->parsed()) return cmd_recur(cfg, out);
        if (c_check->parsed()) return cmd_check(cfg, out);
        if (c_search->parsed()) return cmd_search(cfg, out);
        if (c_table->parsed()) return cmd_table(cfg, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"windtree"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace windtree
