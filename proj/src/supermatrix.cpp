#include "nugrass/supermatrix.hpp"

#include <sstream>

namespace nugrass {

namespace {

// Display width in code points (labels use ν and θ).
std::size_t display_width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

}  // namespace

std::string format_grid(const std::vector<std::vector<std::string>>& cells, std::array<int, 2> row_split,
                        std::array<int, 2> col_split) {
  const int ncols = col_split[0] + col_split[1];
  std::vector<std::size_t> width(static_cast<std::size_t>(ncols), 1);
  for (const auto& row : cells)
    for (int j = 0; j < ncols; ++j) width[j] = std::max(width[j], display_width(row.at(j)));

  auto render_row = [&](const std::vector<std::string>& row) {
    std::string out = "[";
    for (int j = 0; j < ncols; ++j) {
      if (j == col_split[0] && j > 0) out += " |";
      out += ' ';
      out += row[j];
      out.append(width[j] - display_width(row[j]), ' ');
    }
    out += " ]";
    return out;
  };

  std::ostringstream os;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
    if (i == row_split[0] && i > 0) {
      std::size_t w = display_width(render_row(cells[0]));
      std::string rule = "[";
      rule.append(w - 2, '-');
      rule += "]";
      os << rule << '\n';
    }
    os << render_row(cells[i]) << '\n';
  }
  return os.str();
}

}  // namespace nugrass
