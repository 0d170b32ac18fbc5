#include "alloymsa/error.hpp"

namespace alloymsa {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::solver: return "solver";
    case ErrorKind::resonant_energy: return "resonant_energy";
    case ErrorKind::geometry: return "geometry";
    case ErrorKind::analysis: return "analysis";
    case ErrorKind::fit: return "fit";
    case ErrorKind::schedule: return "schedule";
    case ErrorKind::schema: return "schema";
    case ErrorKind::contract: return "contract";
    }
    return "unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::contract:
    case ErrorKind::schedule: return 2;
    case ErrorKind::capacity: return 4;
    default: return 3;
    }
}

}  // namespace alloymsa
