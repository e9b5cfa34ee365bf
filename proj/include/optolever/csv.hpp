#ifndef OPTOLEVER_CSV_HPP
#define OPTOLEVER_CSV_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace optolever::csv {

/// 17 significant digits: round-trips any double exactly.
inline std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_comment(std::ostream& out, std::string_view text) { out << "# " << text << '\n'; }

inline void write_row(std::ostream& out, const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i)
        out << (i ? "," : "") << cells[i];
    out << '\n';
}

inline void write_row(std::ostream& out, const std::vector<double>& values)
{
    for (std::size_t i = 0; i < values.size(); ++i)
        out << (i ? "," : "") << format_number(values[i]);
    out << '\n';
}

} // namespace optolever::csv

#endif // OPTOLEVER_CSV_HPP
