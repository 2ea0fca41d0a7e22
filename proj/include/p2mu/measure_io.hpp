#pragma once

#include <string>

#include "p2mu/measure.hpp"

namespace p2mu {

/// Parse a measure spec document. Component types: atom, circle_fourier,
/// bergman, lens_harmonic; complex numbers as [re, im]. Throws parse_error
/// with field diagnostics, capability_error for unknown component types.
ComplexMeasure parse_measure_spec(const std::string& text);

/// Serialize back to the spec format. parse ∘ serialize ∘ parse is the
/// identity (doubles are emitted with 17 significant digits, which
/// round-trip exactly).
std::string serialize_measure_spec(const ComplexMeasure& mu);

/// Structural equality with exact floating-point comparison (round-trip
/// checks).
bool measure_identical(const ComplexMeasure& a, const ComplexMeasure& b);

ComplexMeasure load_measure_file(const std::string& path);

} // namespace p2mu
