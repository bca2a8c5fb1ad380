#pragma once

#include <string_view>
#include <utility>

#include "doublecat/dblcat.hpp"

namespace dc {

// Built generator-first (objects, hmors, vmors, squares), so indices match a reparse of
// the JSON files in fixtures/.
DblRef fixture_dc0();   // one object, identities only
DblRef fixture_dch1();  // f : x -> x'
DblRef fixture_dcv1();  // u : x -o x'
DblRef fixture_e1();    // α : u'u[g, g'']uh'uh with no hmor x' -> xh'
DblRef fixture_e2();    // α : u[g, h]e_xh and α' : e_x'[h, g']uh

std::vector<std::pair<std::string, DblRef>> all_fixtures();
// Throws std::invalid_argument for an unknown name.
DblRef fixture_by_name(std::string_view name);

}  // namespace dc
