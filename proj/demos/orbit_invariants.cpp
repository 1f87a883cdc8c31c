// Compute J+, J1 and J2 of a few T(k,l) orbits and compare them with the closed forms.
#include <iostream>

#include "kjplus/kjplus.hpp"

int main() {
    using namespace kjplus;
    const TorusOrbitSpec specs[] = {
        {5, 2, 0.2, Direction::Direct},
        {5, 2, 0.3, Direction::Retrograde},
        {3, 5, 0.1, Direction::Direct},
        {5, 1, 0.2, Direction::Direct},
    };
    for (const auto& spec : specs) {
        const InvariantReport r = invariant_report(spec);
        std::cout << "T(" << spec.k << "," << spec.l << ") " << to_string(spec.direction) << " e=" << spec.e
                  << ": J+=" << r.j_plus << " w0=" << r.w0 << " J1=" << r.j1 << " J2=" << r.j2
                  << " double points=" << r.double_point_count << "  closed form " << r.closed_form->j_plus << " / "
                  << r.closed_form->j1 << " / " << r.closed_form->j2 << (r.matches() ? "  [match]" : "  [MISMATCH]")
                  << "\n";
    }
}
