#pragma once

#include <string>

#include "nr/vec2.hpp"

namespace nr {

enum class FlatSource { singularity_test, eigensweep, prediction, geometric };

std::string to_string(FlatSource s);

// A flat segment on the numerical-range boundary. The carrying line is stored
// in the normalization u0 x + v0 y + 1 = 0, so distance == 1/hypot(u0, v0).
struct FlatPortion {
    double line_u0 = 0.0;
    double line_v0 = 0.0;
    Vec2 endpoint1;
    Vec2 endpoint2;
    double length = 0.0;
    double distance = 0.0;
    double angle_of_line = 0.0; // direction of the line, in [0, pi)
    FlatSource source = FlatSource::eigensweep;
};

// Fills length/distance/angle from the line parameters and endpoints.
void finalize_flat(FlatPortion& f);

} // namespace nr
