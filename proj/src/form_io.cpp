#include "nearlyg2/form_io.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "nearlyg2/error.hpp"

namespace nearlyg2 {

using nlohmann::json;

AltForm parse_form(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("form document: ") + e.what());
  }
  try {
    if (doc.at("dim").get<int>() != kDim) throw Error(ErrorKind::Parse, "form document: dim must be 7");
    const int degree = doc.at("degree").get<int>();
    if (degree < 0 || degree > kDim) throw Error(ErrorKind::Parse, "form document: degree out of range");
    AltForm form(degree);
    std::vector<bool> seen(static_cast<std::size_t>(form.size()), false);
    for (const auto& entry : doc.at("components")) {
      const auto indices = entry.at("indices").get<std::vector<int>>();
      if (static_cast<int>(indices.size()) != degree)
        throw Error(ErrorKind::Parse, "form document: index tuple length != degree");
      unsigned mask = 0;
      int prev = 0;
      for (int i : indices) {
        if (i < 1 || i > kDim || i <= prev)
          throw Error(ErrorKind::Parse, "form document: indices must be strictly increasing in 1..7");
        prev = i;
        mask |= 1u << (i - 1);
      }
      const int pos = form_position(mask);
      if (seen[static_cast<std::size_t>(pos)]) throw Error(ErrorKind::Parse, "form document: duplicate index tuple");
      seen[static_cast<std::size_t>(pos)] = true;
      form[pos] = entry.at("value").get<double>();
    }
    return form;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("form document: ") + e.what());
  }
}

std::string format_form(const AltForm& form) {
  json comps = json::array();
  for (int p = 0; p < form.size(); ++p) {
    if (form[p] == 0.0) continue;
    std::vector<int> idx;
    for (unsigned m = form_mask(form.degree(), p); m; m &= m - 1) idx.push_back(std::countr_zero(m) + 1);
    comps.push_back({{"indices", idx}, {"value", form[p]}});
  }
  const json doc = {{"degree", form.degree()}, {"dim", kDim}, {"components", comps}};
  return doc.dump(2);
}

AltForm read_form_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open form file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_form(ss.str());
}

void write_form_file(const std::string& path, const AltForm& form) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write form file: " + path);
  out << format_form(form) << '\n';
}

}  // namespace nearlyg2
