#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sgdf/besov.hpp"
#include "sgdf/energy.hpp"
#include "sgdf/graph.hpp"
#include "sgdf/resistance.hpp"

namespace sgdf {

// One flat table behind both output formats: CSV rows and a JSON array of
// objects carry byte-identical field values.
struct RowTable {
  std::vector<std::string> header;
  std::vector<bool> numeric;  // JSON: emit raw instead of quoted
  std::vector<std::vector<std::string>> rows;
};

// Deterministic shortest-faithful formatting ("%.17g").
std::string format_double(double x);

void write_csv(std::ostream& out, const RowTable& table);
void write_json(std::ostream& out, const RowTable& table);

// level,w1,w2,kind,shared_a_num,shared_a_den,shared_b_num,shared_b_den
RowTable graph_table(const CellGraph& g);
// level,word,value
RowTable cells_table(const CellFunction& u);
// n,A_n,D_n
RowTable profile_table(const EnergyProfile& profile);
// n,R,R_closed,rel_err
struct CornerResistanceRow {
  int n = 0;
  double R = 0.0;
  double closed = 0.0;
  double rel_err = 0.0;
};
RowTable corner_resistance_table(const std::vector<CornerResistanceRow>& rows);
// n,w,corner,R,bound,ratio
RowTable corner_audit_table(const CornerBoundAudit& audit);
// i,j,conductance
RowTable network_table(const ResistorNetwork& net);
// beta,eps,value,value_times_log2,supD,verdict
RowTable probe_table(const std::vector<ProbeRow>& rows);
// check,n,lhs,rhs,ratio,pass
struct AuditRow {
  std::string check;
  int n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = true;
};
RowTable audit_table(const std::vector<AuditRow>& rows);

}  // namespace sgdf
