#pragma once

// Paired (theoretical bound, empirical value) records; every lemma-level
// certificate in the library reports one of these.

#include <cstdint>
#include <sstream>
#include <string>

namespace ntk {

struct BoundReport {
    std::string name;
    double theoretical = 0.0;
    double empirical = 0.0;
    double stderr_ = 0.0;
    bool pass = false;
    // trial metadata
    long m = 0;
    double eps = 0.0;
    double delta = 0.0;
    double eta = 0.0;
    std::uint64_t seed = 0;

    // One CSV row: name,theoretical,empirical,stderr,pass,m,eps,delta,eta,seed
    std::string csv_row() const {
        std::ostringstream os;
        os.precision(17);
        os << name << ',' << theoretical << ',' << empirical << ',' << stderr_ << ','
           << (pass ? 1 : 0) << ',' << m << ',' << eps << ',' << delta << ',' << eta << ','
           << seed;
        return os.str();
    }

    static const char* csv_header() {
        return "name,theoretical,empirical,stderr,pass,m,eps,delta,eta,seed";
    }
};

inline BoundReport make_report(std::string name, double theoretical, double empirical,
                               double stderr_val = 0.0, double tol_stderr_mult = 0.0) {
    BoundReport r;
    r.name = std::move(name);
    r.theoretical = theoretical;
    r.empirical = empirical;
    r.stderr_ = stderr_val;
    r.pass = empirical <= theoretical + tol_stderr_mult * stderr_val;
    return r;
}

}  // namespace ntk
