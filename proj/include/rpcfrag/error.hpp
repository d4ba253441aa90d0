#pragma once

#include <stdexcept>
#include <string>

namespace rpcfrag {

enum class ErrorCode {
    domain,
    argument,
    malformed_partition,
    configuration,
    numeric,
    integrity,
    construction,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool ok, ErrorCode code, const char* what)
{
    if (!ok) fail(code, what);
}

}  // namespace rpcfrag
