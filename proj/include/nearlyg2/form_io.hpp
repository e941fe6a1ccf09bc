#pragma once

// Form documents: {"degree": k, "dim": 7, "components": [{"indices": [1,2,3], "value": 1.0}, ...]}
// Indices are 1-based and strictly increasing; unlisted components are zero.

#include <string>

#include "nearlyg2/forms.hpp"

namespace nearlyg2 {

AltForm parse_form(const std::string& text);
std::string format_form(const AltForm& form);

AltForm read_form_file(const std::string& path);
void write_form_file(const std::string& path, const AltForm& form);

}  // namespace nearlyg2
