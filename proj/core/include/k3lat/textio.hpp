#ifndef K3LAT_TEXTIO_HPP
#define K3LAT_TEXTIO_HPP

#include <iosfwd>
#include <string>

#include "ideal.hpp"

namespace k3lat {

/// Text format for ideals (stable across runs, used by golden tests):
///   ring p=65521 vars=x0..x5 order=grevlex
///   3*x0^2*x3+65520*x1*x2
/// One polynomial per line, terms in ring order, coefficients in [1, p-1].
std::string poly_to_line(const Poly& f);
Poly poly_from_line(const RingPtr& ring, const std::string& line);

std::string ideal_to_text(const Ideal& I);
Ideal ideal_from_text(const std::string& text);

void write_ideal_file(const std::string& path, const Ideal& I);
Ideal read_ideal_file(const std::string& path);

std::string order_name(const PolyRing& R);

}  // namespace k3lat

#endif
