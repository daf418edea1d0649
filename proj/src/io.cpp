#include "dynnet/io.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace dynnet {

namespace {

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, delim)) out.push_back(field);
  if (!line.empty() && line.back() == delim) out.push_back("");
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool is_missing(const std::string& field) {
  const std::string t = trim(field);
  return t.empty() || t == "NA" || t == "na" || t == "NaN" || t == "nan";
}

char detect_delim(const std::string& header) {
  return header.find('\t') != std::string::npos ? '\t' : ',';
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

int name_index(const std::map<std::string, int>& index, const std::string& name,
               const std::string& path, int line) {
  auto it = index.find(name);
  if (it == index.end())
    throw FileFormatError(path, line, "unknown variable '" + name + "'");
  return it->second;
}

std::map<std::string, int> build_index(const std::vector<std::string>& names) {
  std::map<std::string, int> index;
  for (size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
  return index;
}

}  // namespace

RawMatrix read_matrix(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::string line;
  if (!std::getline(in, line))
    throw FileFormatError(path, 1, "empty file");
  const char delim = detect_delim(line);

  RawMatrix raw;
  for (auto& f : split(line, delim)) raw.names.push_back(trim(f));
  const int p = static_cast<int>(raw.names.size());

  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split(line, delim);
    if (static_cast<int>(fields.size()) != p)
      throw FileFormatError(path, lineno,
                            "expected " + std::to_string(p) + " fields, got " +
                                std::to_string(fields.size()));
    std::vector<double> row(p);
    for (int j = 0; j < p; ++j) {
      if (is_missing(fields[j])) {
        row[j] = kMissing;
        continue;
      }
      try {
        size_t pos = 0;
        row[j] = std::stod(trim(fields[j]), &pos);
      } catch (const std::exception&) {
        throw FileFormatError(path, lineno, "bad number '" + fields[j] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2)
    throw FileFormatError(path, lineno, "need at least two data rows");

  raw.values.resize(static_cast<int>(rows.size()), p);
  for (size_t t = 0; t < rows.size(); ++t)
    for (int j = 0; j < p; ++j) raw.values(static_cast<int>(t), j) = rows[t][j];
  return raw;
}

void write_matrix(const std::string& path, const Eigen::MatrixXd& M,
                  const std::vector<std::string>& names, char delim) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << std::setprecision(17);
  for (size_t j = 0; j < names.size(); ++j)
    out << (j ? std::string(1, delim) : "") << names[j];
  out << "\n";
  for (int t = 0; t < M.rows(); ++t) {
    for (int j = 0; j < M.cols(); ++j) {
      if (j) out << delim;
      if (std::isnan(M(t, j))) out << "NA";
      else out << M(t, j);
    }
    out << "\n";
  }
}

NodeClassification read_classes(const std::string& path,
                                const std::vector<std::string>& names,
                                int* defaulted_out) {
  std::ifstream in = open_or_throw(path);
  const auto index = build_index(names);

  NodeClassification z;
  z.source = ClassificationSource::Known;
  z.labels.assign(names.size(), NodeLabel::Leaf);
  std::vector<bool> seen(names.size(), false);

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const char delim = detect_delim(line);
    const auto fields = split(line, delim);
    if (fields.size() < 2)
      throw FileFormatError(path, lineno, "expected 'name,label'");
    const int i = name_index(index, trim(fields[0]), path, lineno);
    std::string label = trim(fields[1]);
    for (auto& c : label) c = static_cast<char>(std::tolower(c));
    if (label == "hub") z.labels[i] = NodeLabel::Hub;
    else if (label == "leaf") z.labels[i] = NodeLabel::Leaf;
    else throw FileFormatError(path, lineno, "label must be hub or leaf");
    seen[i] = true;
  }
  if (defaulted_out) {
    *defaulted_out = 0;
    for (bool s : seen)
      if (!s) ++*defaulted_out;
  }
  return z;
}

void write_classes(const std::string& path, const NodeClassification& z,
                   const std::vector<std::string>& names) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (size_t i = 0; i < names.size(); ++i)
    out << names[i] << ","
        << (z.labels[i] == NodeLabel::Hub ? "hub" : "leaf") << "\n";
}

EdgeSet read_edge_list(const std::string& path,
                       const std::vector<std::string>& names) {
  std::ifstream in = open_or_throw(path);
  const auto index = build_index(names);
  EdgeSet edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const char delim = detect_delim(line);
    const auto fields = split(line, delim);
    if (fields.size() < 2)
      throw FileFormatError(path, lineno, "expected 'source,target[,weight]'");
    const int src = name_index(index, trim(fields[0]), path, lineno);
    const int dst = name_index(index, trim(fields[1]), path, lineno);
    edges.insert({src, dst});
  }
  return edges;
}

void write_edge_list(const std::string& path, const Eigen::MatrixXd& A,
                     const std::vector<std::string>& names) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << std::setprecision(17);
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      if (A(i, j) != 0.0)
        out << names[i] << "," << names[j] << "," << A(i, j) << "\n";
}

void write_path_table(const std::string& path, const PenaltyPath& p) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << std::setprecision(12);
  out << "rho,df,bic,aic,stop_reason\n";
  const std::string stop = p.stop_reason == PathStop::GridExhausted
                               ? "grid_exhausted"
                               : "column_capacity_reached";
  for (size_t k = 0; k < p.estimates.size(); ++k) {
    const auto& e = p.estimates[k];
    out << e.rho << "," << e.df << "," << e.bic << "," << e.aic << ","
        << (k + 1 == p.estimates.size() ? stop : "") << "\n";
  }
}

void write_dot(const std::string& path, const Eigen::MatrixXd& A,
               const std::vector<std::string>& names) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "digraph network {\n";
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      if (A(i, j) != 0.0)
        out << "  \"" << names[i] << "\" -> \"" << names[j] << "\";\n";
  out << "}\n";
}

}  // namespace dynnet
