#include "rpcfrag/error.hpp"

namespace rpcfrag {

const char* error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::argument: return "argument";
    case ErrorCode::malformed_partition: return "malformed_partition";
    case ErrorCode::configuration: return "configuration";
    case ErrorCode::numeric: return "numeric";
    case ErrorCode::integrity: return "integrity";
    case ErrorCode::construction: return "construction";
    }
    return "unknown";
}

void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

}  // namespace rpcfrag
