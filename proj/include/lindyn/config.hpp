#pragma once

#include "lindyn/rational.hpp"

#include <string>
#include <vector>

namespace lindyn {

// All run defaults live here; flags override fields, and the environment
// variable LINDYN_CONFIG may point to a JSON file read before flags apply.
struct Config {
    long long window = 1000;     // certificate check window
    long long horizon = 100000;  // empirical horizon
    unsigned long long seed = 12345;
    int eps_ladder_lo = 1;  // eps ladder 2^-1 .. 2^-6
    int eps_ladder_hi = 6;
    std::string version = "0.1.0";

    std::vector<Rational> eps_ladder() const {
        std::vector<Rational> out;
        for (int k = eps_ladder_lo; k <= eps_ladder_hi; ++k)
            out.push_back(Rational(Int(1), Int(1) << k));
        return out;
    }

    // defaults, then LINDYN_CONFIG overrides when set
    static Config load();
};

}  // namespace lindyn
