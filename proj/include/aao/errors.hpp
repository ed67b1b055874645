#ifndef AAO_ERRORS_HPP
#define AAO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aao {

// Structural problems: unknown names, malformed geometries, bad scopes.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Two evidence atoms assign conflicting values.
class ContradictionError : public ModelError {
public:
    explicit ContradictionError(const std::string& what) : ModelError(what) {}
};

// Evidence is internally consistent but excludes every microstate,
// so conditioning is undefined. Distinct from a validation clash.
class ZeroSupportError : public ModelError {
public:
    explicit ZeroSupportError(const std::string& what) : ModelError(what) {}
};

// The raw assignment space exceeds the configured cap. An explicit
// refusal; nothing is ever silently truncated.
class SizeGuardError : public ModelError {
public:
    explicit SizeGuardError(const std::string& what) : ModelError(what) {}
};

// Syntax error with 1-based position of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", col " +
                             std::to_string(column) + ": " + message),
          line(line), column(column), message(message) {}
    int line;
    int column;
    std::string message;
};

}  // namespace aao

#endif
