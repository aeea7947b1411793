#include <iostream>

#include "nmq/app/validation.hpp"

int main() {
    const auto checks = nmq::app::run_validation(nmq::app::ValidationLevel::full);
    int failed = 0;
    for (const auto& c : checks) {
        nmq::app::print_check(std::cout, c, true);
        if (!c.passed) ++failed;
    }
    std::cout << checks.size() - failed << "/" << checks.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
