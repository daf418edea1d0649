#ifndef DYNNET_IO_HPP
#define DYNNET_IO_HPP

#include <iosfwd>
#include <string>

#include "dynnet/eval.hpp"
#include "dynnet/selection.hpp"

namespace dynnet {

struct RawMatrix {
  Eigen::MatrixXd values;  // NaN marks missing entries
  std::vector<std::string> names;
};

// Delimited text, comma or tab (auto-detected from the header line).
// First row holds variable names; empty fields or "NA" are missing.
RawMatrix read_matrix(const std::string& path);
void write_matrix(const std::string& path, const Eigen::MatrixXd& M,
                  const std::vector<std::string>& names, char delim = ',');

// Two-column file: variable name, hub|leaf. Unlisted names default to leaf;
// their count is reported through defaulted_out when given.
NodeClassification read_classes(const std::string& path,
                                const std::vector<std::string>& names,
                                int* defaulted_out = nullptr);
void write_classes(const std::string& path, const NodeClassification& z,
                   const std::vector<std::string>& names);

// Edge list: source, target and optional weight column (ignored on read).
EdgeSet read_edge_list(const std::string& path,
                       const std::vector<std::string>& names);
void write_edge_list(const std::string& path, const Eigen::MatrixXd& A,
                     const std::vector<std::string>& names);

void write_path_table(const std::string& path, const PenaltyPath& p);

// Graphviz dot text of the nonzero entries, for external visualization.
void write_dot(const std::string& path, const Eigen::MatrixXd& A,
               const std::vector<std::string>& names);

}  // namespace dynnet

#endif  // DYNNET_IO_HPP
