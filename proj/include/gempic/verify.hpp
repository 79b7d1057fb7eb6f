#pragma once

/// Structural verification suite behind `sim verify`.

#include <iosfwd>
#include <string>
#include <vector>

namespace gempic {

enum class Fault { None, FaradaySignFlip, SkipK0Inverse };

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    std::vector<std::size_t> sizes{16, 15};
    int random_functions = 50;
    Fault fault = Fault::None;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool ok() const;
    void print(std::ostream& os) const;
};

VerifyReport run_verification(const VerifyOptions& opt = {});

/// Worst relative defect of e2.M1.de2 + b3.M0.db3 = -e2.M1.j2 over random states.
double energy_exchange_defect(std::size_t M, int trials, Fault fault);

}  // namespace gempic
