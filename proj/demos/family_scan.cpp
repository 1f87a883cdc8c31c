// Events along the eccentricity family of T(5,2) and T(3,5), and a constancy check.
#include <iostream>

#include "kjplus/kjplus.hpp"

int main() {
    using namespace kjplus;
    for (auto [k, l] : {std::pair{5, 2}, std::pair{3, 5}}) {
        const ScanResult res = scan_family(k, l);
        std::cout << "T(" << k << "," << l << ") events:";
        for (const auto& ev : res.events) std::cout << "  " << to_string(ev.kind) << " @ " << ev.eccentricity;
        std::cout << "\n";
    }
    const ConstancyReport rep = constancy_check(
        5, 2, {{0.1, Direction::Direct}, {0.3, Direction::Direct}, {0.2, Direction::Retrograde}, {0.5, Direction::Retrograde}});
    std::cout << "T(5,2) J1/J2 constancy: " << (rep.consistent ? "consistent" : "VIOLATED") << "\n";
    for (const auto& r : rep.reports)
        std::cout << "  e=" << r.spec->e << " " << to_string(r.spec->direction) << ": J+=" << r.j_plus << " J1=" << r.j1
                  << " J2=" << r.j2 << "\n";
}
