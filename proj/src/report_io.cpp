#include "windtree/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace windtree {

std::string fmt_double(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

json to_json(const BigRat& r) { return rat_to_string(r); }

BigRat rat_from_json(const json& j) { return parse_rational(j.get<std::string>()); }

json to_json(const PiRational& x) {
    return {{"coeff", to_json(x.coeff)}, {"exact", x.to_string()}, {"value", pirational_eval(x)}};
}

PiRational pirational_from_json(const json& j) { return PiRational(rat_from_json(j.at("coeff"))); }

json to_json(const IdentityReport& r) {
    return {{"m", r.m}, {"s", r.s}, {"direct", to_json(r.direct)}, {"closed", to_json(r.closed)}, {"equal", r.equal}};
}

IdentityReport identity_report_from_json(const json& j) {
    IdentityReport r;
    r.m = j.at("m").get<long>();
    r.s = j.at("s").get<int>();
    r.direct = rat_from_json(j.at("direct"));
    r.closed = rat_from_json(j.at("closed"));
    r.equal = j.at("equal").get<bool>();
    return r;
}

json to_json(const ConstantsBundle& b) {
    return {{"m", b.m},
            {"delta", to_json(b.delta)},
            {"delta_value", b.delta.get_d()},
            {"c_pocket_good", to_json(b.c_pocket_good)},
            {"c_dumbbell_good", to_json(b.c_dumbbell_good)},
            {"c_good", to_json(b.c_good)},
            {"c_main", to_json(b.c_main)},
            {"c_area_good", to_json(b.c_area_good)},
            {"c_area_main", to_json(b.c_area_main)}};
}

ConstantsBundle constants_bundle_from_json(const json& j) {
    ConstantsBundle b;
    b.m = j.at("m").get<long>();
    b.delta = rat_from_json(j.at("delta"));
    b.c_pocket_good = pirational_from_json(j.at("c_pocket_good"));
    b.c_dumbbell_good = pirational_from_json(j.at("c_dumbbell_good"));
    b.c_good = pirational_from_json(j.at("c_good"));
    b.c_main = pirational_from_json(j.at("c_main"));
    b.c_area_good = pirational_from_json(j.at("c_area_good"));
    b.c_area_main = pirational_from_json(j.at("c_area_main"));
    return b;
}

json to_json(const CylinderRecord& r) {
    json j = {{"p", r.direction.p},
              {"q", r.direction.q},
              {"width", r.width},
              {"height", r.height},
              {"length", r.holonomy_length},
              {"winding_h", r.winding_h},
              {"winding_v", r.winding_v},
              {"displacement", r.displacement},
              {"class", to_string(r.classification)}};
    j["profile"] = r.profile ? json{r.profile->r_h, r.profile->r_v} : json(nullptr);
    if (r.deck_orbit) {
        const auto& o = *r.deck_orbit;
        j["deck_orbit"] = {{"n_X", o.n_X}, {"b", o.b}, {"s", o.s}, {"pocket_like", o.pocket_like}, {"b_h", o.b_h},
                           {"b_v", o.b_v}, {"s_trace", o.s_trace}, {"return_element", o.return_element}};
    } else {
        j["deck_orbit"] = nullptr;
    }
    return j;
}

CylinderRecord cylinder_record_from_json(const json& j) {
    CylinderRecord r;
    r.direction = {j.at("p").get<long>(), j.at("q").get<long>()};
    r.width = j.at("width").get<long>();
    r.height = j.at("height").get<long>();
    r.holonomy_length = j.at("length").get<double>();
    r.winding_h = j.at("winding_h").get<std::array<std::int64_t, 2>>();
    r.winding_v = j.at("winding_v").get<std::array<std::int64_t, 2>>();
    r.displacement = j.at("displacement").get<std::array<std::int64_t, 2>>();
    r.classification = cyl_class_from_string(j.at("class").get<std::string>());
    if (!j.at("profile").is_null()) r.profile = Profile{j["profile"][0].get<int>(), j["profile"][1].get<int>()};
    if (!j.at("deck_orbit").is_null()) {
        const auto& o = j["deck_orbit"];
        r.deck_orbit = DeckOrbit{o.at("n_X").get<int>(), o.at("b").get<int>(),   o.at("s").get<int>(),
                                 o.at("pocket_like").get<bool>(), o.at("b_h").get<int>(), o.at("b_v").get<int>(),
                                 o.at("s_trace").get<int>(), o.at("return_element").get<int>()};
    }
    return r;
}

json to_json(const CountReport& r) {
    json L = json::array(), area = json::array(), area_f = json::array();
    for (const auto& l : r.L) L.push_back(to_json(l));
    for (const auto& a : r.N_area_good) {
        area.push_back(to_json(a));
        area_f.push_back(a.get_d());
    }
    json prof = json::object();
    for (const auto& [p, v] : r.good_by_profile) prof[std::to_string(p.r_h) + std::to_string(p.r_v)] = v;
    return {{"L", L},
            {"directions", r.directions},
            {"N_all", r.N_all},
            {"N_closed", r.N_closed},
            {"N_good", r.N_good},
            {"N_bad", r.N_bad},
            {"N_area_good", area},
            {"N_area_good_value", area_f},
            {"good_by_profile", prof},
            {"good_pocket_like", r.good_pocket_like},
            {"good_dumbbell_like", r.good_dumbbell_like}};
}

CountReport count_report_from_json(const json& j) {
    CountReport r;
    for (const auto& l : j.at("L")) r.L.push_back(rat_from_json(l));
    r.directions = j.at("directions").get<long>();
    r.N_all = j.at("N_all").get<std::vector<long>>();
    r.N_closed = j.at("N_closed").get<std::vector<long>>();
    r.N_good = j.at("N_good").get<std::vector<long>>();
    r.N_bad = j.at("N_bad").get<std::vector<long>>();
    for (const auto& a : j.at("N_area_good")) r.N_area_good.push_back(rat_from_json(a));
    for (const auto& [k, v] : j.at("good_by_profile").items())
        r.good_by_profile[Profile{k[0] - '0', k[1] - '0'}] = v.get<std::vector<long>>();
    r.good_pocket_like = j.at("good_pocket_like").get<std::vector<long>>();
    r.good_dumbbell_like = j.at("good_dumbbell_like").get<std::vector<long>>();
    return r;
}

json to_json(const DiffusionReport& r) {
    return {{"m", r.m},           {"n_directions", r.n_directions}, {"t_max", r.t_max},
            {"t_min", r.t_min},   {"slopes", r.slopes},             {"angles", r.angles},
            {"mean_slope", r.mean_slope}, {"stderr", r.stderr_slope}, {"seed", r.seed},
            {"resampled", r.resampled}};
}

DiffusionReport diffusion_report_from_json(const json& j) {
    DiffusionReport r;
    r.m = j.at("m").get<long>();
    r.n_directions = j.at("n_directions").get<long>();
    r.t_max = j.at("t_max").get<double>();
    r.t_min = j.at("t_min").get<double>();
    r.slopes = j.at("slopes").get<std::vector<double>>();
    r.angles = j.at("angles").get<std::vector<double>>();
    r.mean_slope = j.at("mean_slope").get<double>();
    r.stderr_slope = j.at("stderr").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.resampled = j.at("resampled").get<long>();
    return r;
}

json to_json(const RecurrenceReport& r) {
    json times = json::array();
    for (double t : r.return_times) times.push_back(std::isfinite(t) ? json(t) : json(nullptr));
    return {{"n_orbits", r.n_orbits}, {"t_max", r.t_max}, {"eps", r.eps}, {"seed", r.seed},
            {"return_times", times},  {"fraction", r.fraction}};
}

RecurrenceReport recurrence_report_from_json(const json& j) {
    RecurrenceReport r;
    r.n_orbits = j.at("n_orbits").get<long>();
    r.t_max = j.at("t_max").get<double>();
    r.eps = j.at("eps").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& t : j.at("return_times"))
        r.return_times.push_back(t.is_null() ? std::numeric_limits<double>::infinity() : t.get<double>());
    r.fraction = j.at("fraction").get<double>();
    return r;
}

json to_json(const ConsistencyReport& r) {
    return {{"pass", r.pass},
            {"good_checked", r.good_checked},
            {"closure_checked", r.closure_checked},
            {"violations", r.violations}};
}

ConsistencyReport consistency_report_from_json(const json& j) {
    ConsistencyReport r;
    r.pass = j.at("pass").get<bool>();
    r.good_checked = j.at("good_checked").get<long>();
    r.closure_checked = j.at("closure_checked").get<long>();
    r.violations = j.at("violations").get<std::vector<std::string>>();
    return r;
}

void write_records_csv(std::ostream& out, const std::vector<CylinderRecord>& records) {
    out << "p,q,width,height,length,class,r_h,r_v,n_X,b,s,pocket_like\n";
    for (const auto& r : records) {
        out << r.direction.p << ',' << r.direction.q << ',' << r.width << ',' << r.height << ','
            << fmt_double(r.holonomy_length) << ',' << to_string(r.classification) << ',';
        if (r.profile) out << r.profile->r_h << ',' << r.profile->r_v << ',';
        else out << ",,";
        if (r.deck_orbit)
            out << r.deck_orbit->n_X << ',' << r.deck_orbit->b << ',' << r.deck_orbit->s << ','
                << (r.deck_orbit->pocket_like ? 1 : 0);
        else out << ",,,";
        out << '\n';
    }
}

void write_count_csv(std::ostream& out, const CountReport& r) {
    out << "L,N_all,N_closed,N_good,N_bad,N_area_good\n";
    for (size_t b = 0; b < r.L.size(); ++b)
        out << rat_to_string(r.L[b]) << ',' << r.N_all[b] << ',' << r.N_closed[b] << ',' << r.N_good[b] << ','
            << r.N_bad[b] << ',' << fmt_double(r.N_area_good[b].get_d()) << '\n';
}

void write_diffusion_csv(std::ostream& out, const DiffusionReport& r) {
    out << "orbit,angle,slope\n";
    for (size_t i = 0; i < r.slopes.size(); ++i)
        out << i << ',' << fmt_double(r.angles[i]) << ',' << fmt_double(r.slopes[i]) << '\n';
}

}  // namespace windtree
