#ifndef DYNNET_ERRORS_HPP
#define DYNNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dynnet {

// Base class for all toolkit errors. Each concrete error maps to a distinct
// CLI exit code (see tools/dynnet.cpp).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConstantColumn : public Error {
public:
  explicit ConstantColumn(const std::string& name)
      : Error("constant column: " + name), column_name(name) {}
  std::string column_name;
};

class MissingValueWithImputeOff : public Error {
public:
  MissingValueWithImputeOff(int row, int col)
      : Error("missing value at row " + std::to_string(row) + ", column " +
              std::to_string(col) + " (imputation disabled)"),
        row(row), col(col) {}
  int row, col;
};

class AllMissingColumn : public Error {
public:
  explicit AllMissingColumn(const std::string& name)
      : Error("column is entirely missing: " + name), column_name(name) {}
  std::string column_name;
};

class SingularCovariance : public Error {
public:
  explicit SingularCovariance(double cond)
      : Error("covariance matrix numerically singular (cond ~ " +
              std::to_string(cond) + ")"),
        condition(cond) {}
  double condition;
};

class SingularActiveBlock : public Error {
public:
  explicit SingularActiveBlock(int column = -1)
      : Error(column < 0 ? std::string("active block singular")
                         : "active block singular in column " +
                               std::to_string(column)),
        column(column) {}
  int column;
};

class NonConvergence : public Error {
public:
  explicit NonConvergence(int iterations, int column = -1)
      : Error("active-set iteration cap reached (" +
              std::to_string(iterations) + " iterations)" +
              (column < 0 ? "" : " in column " + std::to_string(column))),
        iterations(iterations), column(column) {}
  int iterations, column;
};

class DegenerateInput : public Error {
public:
  explicit DegenerateInput(const std::string& msg) : Error(msg) {}
};

class MissingInit : public Error {
public:
  MissingInit() : Error("penalty regime requires an initial estimate") {}
};

class MissingClassification : public Error {
public:
  MissingClassification()
      : Error("penalty regime requires a node classification") {}
};

class NonPositiveRho : public Error {
public:
  explicit NonPositiveRho(double rho)
      : Error("penalty level must be positive, got " + std::to_string(rho)) {}
};

class AllInfinitePenalties : public Error {
public:
  AllInfinitePenalties()
      : Error("penalty matrix has no finite positive entry") {}
};

class InfeasibleEdgeCount : public Error {
public:
  InfeasibleEdgeCount(int requested, int available)
      : Error("cannot place " + std::to_string(requested) + " distinct edges (" +
              std::to_string(available) + " placeable pairs)"),
        requested(requested), available(available) {}
  int requested, available;
};

class SingularSupportBlock : public Error {
public:
  explicit SingularSupportBlock(int column)
      : Error("support block of S singular in column " + std::to_string(column)),
        column(column) {}
  int column;
};

class FileFormatError : public Error {
public:
  FileFormatError(const std::string& path, int line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what),
        path(path), line(line) {}
  std::string path;
  int line;
};

}  // namespace dynnet

#endif  // DYNNET_ERRORS_HPP
