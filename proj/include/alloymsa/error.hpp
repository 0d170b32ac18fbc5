#pragma once

#include <stdexcept>
#include <string>

namespace alloymsa {

enum class ErrorKind {
    parameter,
    precondition,
    capacity,
    solver,
    resonant_energy,
    geometry,
    analysis,
    fit,
    schedule,
    schema,
    contract,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// process exit status used by the command line tool
int exit_code(ErrorKind kind);

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) throw Error(kind, what);
}

}  // namespace alloymsa
