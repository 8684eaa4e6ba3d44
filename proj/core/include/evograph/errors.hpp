#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace evograph {

// Base for all library errors. `code()` is a stable machine-readable tag,
// `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define EVOGRAPH_DEFINE_ERROR(Name, code_str)                      \
    class Name : public Error {                                    \
    public:                                                        \
        explicit Name(const std::string& message)                  \
            : Error(code_str, message) {}                          \
    }

EVOGRAPH_DEFINE_ERROR(EmptyTextError, "empty_text");
EVOGRAPH_DEFINE_ERROR(ProviderUnavailableError, "provider_unavailable");
EVOGRAPH_DEFINE_ERROR(ParseFailureError, "parse_failure");
EVOGRAPH_DEFINE_ERROR(NodeNotFoundError, "node_not_found");
EVOGRAPH_DEFINE_ERROR(IsSeedError, "is_seed");
EVOGRAPH_DEFINE_ERROR(MixedDirectionError, "mixed_direction");
EVOGRAPH_DEFINE_ERROR(NoTemplateError, "no_template");
EVOGRAPH_DEFINE_ERROR(InsufficientNegativesError, "insufficient_negatives");
EVOGRAPH_DEFINE_ERROR(IdMismatchError, "id_mismatch");
EVOGRAPH_DEFINE_ERROR(EmptyInputError, "empty_input");
EVOGRAPH_DEFINE_ERROR(LabelOutOfRangeError, "label_out_of_range");
EVOGRAPH_DEFINE_ERROR(InputError, "input");

#undef EVOGRAPH_DEFINE_ERROR

} // namespace evograph
