#include <doctest.h>

#include <sstream>

#include "gempic/verify.hpp"

using namespace gempic;

TEST_SUITE("verify")
{
    TEST_CASE("clean build passes every structural check")
    {
        VerifyOptions opt;
        opt.random_functions = 10;
        const VerifyReport r = run_verification(opt);
        for (const auto& c : r.checks) CHECK_MESSAGE(c.pass, c.name << " = " << c.value << " > " << c.tolerance);
        CHECK(r.ok());
        std::ostringstream os;
        r.print(os);
        CHECK(os.str().find("all checks passed") != std::string::npos);
    }

    TEST_CASE("injected faults are detected")
    {
        for (Fault f : {Fault::FaradaySignFlip, Fault::SkipK0Inverse}) {
            VerifyOptions opt;
            opt.random_functions = 10;
            opt.fault = f;
            CHECK_FALSE(run_verification(opt).ok());
        }
        CHECK(energy_exchange_defect(15, 5, Fault::None) <= 1e-12);
        CHECK(energy_exchange_defect(15, 5, Fault::FaradaySignFlip) >= 1e-3);
    }
}
