// J+ and rotation numbers of the standard curves K_j and of the orbit schematics.
#include <iostream>

#include "kjplus/kjplus.hpp"

int main() {
    using namespace kjplus;
    for (int j = 0; j <= 6; ++j) {
        const PolylineCurve c = standard_curve(j);
        const Arrangement a = build_arrangement(c);
        std::cout << "K_" << j << ": rotation " << rotation_number(c) << ", double points " << a.double_points.size()
                  << ", J+ " << j_plus(a) << "\n";
    }
    for (auto [k, l, dir] : {std::tuple{5, 2, Direction::Direct}, {4, 7, Direction::Direct}, {2, 1, Direction::Retrograde}}) {
        const PolylineCurve s = schematic_orbit(k, l, dir);
        const Arrangement a = build_arrangement(s);
        std::cout << "schematic T(" << k << "," << l << ") " << to_string(dir) << ": double points "
                  << a.double_points.size() << ", faces " << a.faces.size() << ", winding about 0 "
                  << winding_at(s, {0.0, 0.0}) << ", J+ " << j_plus(a) << "\n";
    }
}
