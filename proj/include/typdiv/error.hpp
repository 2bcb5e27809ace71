#ifndef TYPDIV_ERROR_HPP
#define TYPDIV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace typdiv {

// Error taxonomy mirrored by the CLI exit codes:
//   UsageError -> 1, DataError (and IoError) -> 2, SampleError -> 3.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : DataError {
    using DataError::DataError;
};

struct SampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A code that is neither a known ISO 639-3 code nor a known glottocode.
class UnknownCodeError : public SampleError {
public:
    explicit UnknownCodeError(std::string code, const std::string& detail = "")
        : SampleError("unknown language code '" + code + "'" +
                      (detail.empty() ? "" : ": " + detail)),
          code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const UsageError*>(&e)) return 1;
    if (dynamic_cast<const DataError*>(&e)) return 2;
    if (dynamic_cast<const SampleError*>(&e)) return 3;
    return 2;
}

} // namespace typdiv

#endif
