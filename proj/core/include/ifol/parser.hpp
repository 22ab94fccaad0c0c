#pragma once

// Line-oriented workspace files and the formula syntax used inside them.

#include <memory>
#include <string>
#include <vector>

#include "ifol/error.hpp"
#include "ifol/workspace.hpp"

namespace ifol {

struct Diagnostic {
  std::size_t line = 0;
  std::size_t column = 0;
  ErrorKind kind = ErrorKind::ParseError;
  std::string message;
};

/// Thrown by the loader; carries every problem found in the file.
class LoadFailure : public Error {
 public:
  LoadFailure(std::string source, std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::vector<Diagnostic> diagnostics_;
};

/// `<source>:<line>:<column>: <Kind>: <message>` per diagnostic.
std::string format_diagnostics(const LoadFailure& failure);

std::unique_ptr<Workspace> load_workspace_text(const std::string& text, const std::string& source = "<input>");
std::unique_ptr<Workspace> load_workspace(const std::string& path);

/// Parses one formula. Identifiers that are neither annotated (`x:s`) nor
/// bound by a quantifier are constants. Throws ParseError.
Formula parse_formula(const std::string& text);

/// Workspace text that loads back into an equivalent workspace.
std::string render_workspace(const Workspace& ws);

}  // namespace ifol
