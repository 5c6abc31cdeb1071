#ifndef VNLAB_EXPORT_HPP
#define VNLAB_EXPORT_HPP

#include <json.hpp>

#include "vnlab/classifier.hpp"
#include "vnlab/measurement.hpp"

namespace vnlab {

using Json = nlohmann::ordered_json;

/// "p/q", or "p" for integers.
std::string to_string(const Fraction& f);
/// Parses "p/q", "p" or a decimal string; throws SchemaError.
Fraction parse_fraction(const std::string& text);

Json to_json(const Complex& z);
/// {space, dimension, entries: row-major [re, im] pairs}.
Json to_json(const Matrix& m, SpaceTag tag);
/// Records {element, point, re, im} with labels taken from the space.
Json to_json(const AlphaFunction& alpha, const HybridSpace& hs);
Json to_json(const AlgebraReport& r);
Json to_json(const Comparison& c);
Json to_json(const TypeReport& r);
Json to_json(const TracialReport& r);
Json to_json(const CorrelationReport& r);
Json to_json(const Subset& s, const MeasureSpace& space);

}  // namespace vnlab

#endif  // VNLAB_EXPORT_HPP
