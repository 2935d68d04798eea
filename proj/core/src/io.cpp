#include "sgdf/io.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace sgdf {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const RowTable& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << table.header[i] << (i + 1 < table.header.size() ? ',' : '\n');
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw std::logic_error("write_csv: row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? ',' : '\n');
  }
}

namespace {
void json_escape(std::ostream& out, const std::string& s) {
  out << '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out << '\\';
    out << c;
  }
  out << '"';
}
}  // namespace

void write_json(std::ostream& out, const RowTable& table) {
  out << "[\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.header.size())
      throw std::logic_error("write_json: row width mismatch");
    out << "  {";
    for (std::size_t i = 0; i < row.size(); ++i) {
      json_escape(out, table.header[i]);
      out << ": ";
      const bool raw = i < table.numeric.size() && table.numeric[i];
      if (raw)
        out << row[i];
      else
        json_escape(out, row[i]);
      if (i + 1 < row.size()) out << ", ";
    }
    out << '}' << (r + 1 < table.rows.size() ? "," : "") << '\n';
  }
  out << "]\n";
}

RowTable graph_table(const CellGraph& g) {
  RowTable t;
  t.header = {"level", "w1", "w2", "kind", "shared_a_num", "shared_a_den", "shared_b_num",
              "shared_b_den"};
  t.numeric = {true, false, false, false, true, true, true, true};
  for (const Edge& e : g.edges) {
    t.rows.push_back({std::to_string(g.level), e.w1.str(), e.w2.str(),
                      e.kind == EdgeKind::I ? "I" : "II", e.shared_point.a.get_num().get_str(),
                      e.shared_point.a.get_den().get_str(), e.shared_point.b.get_num().get_str(),
                      e.shared_point.b.get_den().get_str()});
  }
  return t;
}

RowTable cells_table(const CellFunction& u) {
  RowTable t;
  t.header = {"level", "word", "value"};
  t.numeric = {true, false, true};
  const auto words = all_words(u.level);
  for (std::size_t i = 0; i < words.size(); ++i)
    t.rows.push_back({std::to_string(u.level), words[i].str(), format_double(u.values[i])});
  return t;
}

RowTable profile_table(const EnergyProfile& profile) {
  RowTable t;
  t.header = {"n", "A_n", "D_n"};
  t.numeric = {true, true, true};
  for (std::size_t i = 0; i < profile.D.size(); ++i)
    t.rows.push_back(
        {std::to_string(i + 1), format_double(profile.A[i]), format_double(profile.D[i])});
  return t;
}

RowTable corner_resistance_table(const std::vector<CornerResistanceRow>& rows) {
  RowTable t;
  t.header = {"n", "R", "R_closed", "rel_err"};
  t.numeric = {true, true, true, true};
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.n), format_double(r.R), format_double(r.closed),
                      format_double(r.rel_err)});
  return t;
}

RowTable corner_audit_table(const CornerBoundAudit& audit) {
  RowTable t;
  t.header = {"n", "w", "corner", "R", "bound", "ratio"};
  t.numeric = {true, false, true, true, true, true};
  for (const auto& row : audit.rows)
    t.rows.push_back({std::to_string(audit.level), row.w.str(), std::to_string(row.corner),
                      format_double(row.R), format_double(row.bound), format_double(row.ratio)});
  return t;
}

RowTable network_table(const ResistorNetwork& net) {
  RowTable t;
  t.header = {"i", "j", "conductance"};
  t.numeric = {true, true, true};
  for (const auto& l : net.links)
    t.rows.push_back({std::to_string(l.i), std::to_string(l.j), format_double(l.conductance)});
  return t;
}

RowTable probe_table(const std::vector<ProbeRow>& rows) {
  RowTable t;
  t.header = {"beta", "eps", "value", "value_times_log2", "supD", "verdict"};
  t.numeric = {true, true, true, true, true, false};
  for (const auto& r : rows)
    t.rows.push_back({format_double(r.beta), format_double(r.eps), format_double(r.value),
                      format_double(r.value_log2), format_double(r.sup_D),
                      r.pass ? "pass" : "fail"});
  return t;
}

RowTable audit_table(const std::vector<AuditRow>& rows) {
  RowTable t;
  t.header = {"check", "n", "lhs", "rhs", "ratio", "pass"};
  t.numeric = {false, true, true, true, true, false};
  for (const auto& r : rows)
    t.rows.push_back({r.check, std::to_string(r.n), format_double(r.lhs), format_double(r.rhs),
                      format_double(r.ratio), r.pass ? "true" : "false"});
  return t;
}

}  // namespace sgdf
