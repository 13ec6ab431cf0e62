#pragma once

#include "windtree/exactmath.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace windtree {

struct Profile {
    int r_h = 0;
    int r_v = 0;

    bool good() const { return r_h <= 1 && r_v <= 1; }
    auto operator<=>(const Profile&) const = default;
    std::string to_string() const { return "(" + std::to_string(r_h) + "," + std::to_string(r_v) + ")"; }
};

enum class ConfigKind { Pocket, Dumbbell };

struct ConfigClass {
    ConfigKind kind = ConfigKind::Pocket;
    Profile profile;
    long q = 0;  // dumbbell only
    BigInt multiplicity_count;
};

struct ConstantsBundle {
    long m = 0;
    BigRat delta;
    PiRational c_pocket_good;
    PiRational c_dumbbell_good;
    PiRational c_good;
    PiRational c_main;
    PiRational c_area_good;
    PiRational c_area_main;
};

struct QOutOfRange : std::out_of_range {
    QOutOfRange(long m, long q)
        : std::out_of_range("q=" + std::to_string(q) + " outside 1..m-1 for m=" + std::to_string(m)) {}
};
struct NotGoodProfile : std::invalid_argument {
    explicit NotGoodProfile(const Profile& p) : std::invalid_argument("profile " + p.to_string() + " is not good") {}
};
struct InternalMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

BigRat delta(long m);

std::map<Profile, BigInt> pocket_profile_counts(long m);
std::map<Profile, BigInt> dumbbell_profile_counts(long m, long q);
/// All good configuration classes of the genus-zero stratum for this m.
std::vector<ConfigClass> good_configurations(long m);

int lifting_factor(const Profile& profile, bool pocket_like, bool area_weighted);

PiRational c_pocket_genus0();
PiRational c_dumbbell_genus0(long m, long q);

PiRational c_pocket_good(long m);
PiRational c_dumbbell_good(long m);
/// Area-weighted good constant before the 1/(2m+1) normalisation.
PiRational c_area_good_unnormalised(long m);

ConstantsBundle constants_bundle(long m);

/// Closed-form constants, used as the second path.
PiRational c_main_closed(long m);
PiRational c_area_main_closed(long m);

}  // namespace windtree
