#pragma once

#include "localgw/scalar.hpp"
#include "localgw/useries.hpp"

#include "json.hpp"

namespace localgw {

// Wire format: {"num":[{"c":[re_num,re_den,im_num,im_den],"t1":e,"t2":e,"s":e},...],"den":[...]}
// with the four coefficient components as decimal strings. Terms appear in
// canonical (descending lex) order, so equal Scalars encode identically.
nlohmann::json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& j);

nlohmann::json scalar_to_json(const Scalar& s);
// Throws std::invalid_argument on malformed input.
Scalar scalar_from_json(const nlohmann::json& j);

// {"offset":o,"precision":p,"coeffs":[scalar,...]}
nlohmann::json series_to_json(const USeries& s);
USeries series_from_json(const nlohmann::json& j);

}  // namespace localgw
