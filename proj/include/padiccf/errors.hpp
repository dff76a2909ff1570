#ifndef PADICCF_ERRORS_HPP
#define PADICCF_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace padiccf {

enum class error_kind {
    domain,
    zero_input,
    precision,
    arithmetic,
    no_root,
    length,
    not_found,
};

inline std::string_view to_string(error_kind k)
{
    switch (k) {
    case error_kind::domain: return "domain";
    case error_kind::zero_input: return "zero_input";
    case error_kind::precision: return "precision";
    case error_kind::arithmetic: return "arithmetic";
    case error_kind::no_root: return "no_root";
    case error_kind::length: return "length";
    case error_kind::not_found: return "not_found";
    }
    return "unknown";
}

// Every failure raised by the library carries a kind so the CLI can map it
// onto a structured error object.
class error : public std::runtime_error {
public:
    error(error_kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    error_kind kind() const noexcept { return kind_; }

private:
    error_kind kind_;
};

struct domain_error : error {
    explicit domain_error(const std::string& w) : error(error_kind::domain, w) {}
};

struct zero_input_error : error {
    explicit zero_input_error(const std::string& w) : error(error_kind::zero_input, w) {}
};

struct arithmetic_error : error {
    explicit arithmetic_error(const std::string& w) : error(error_kind::arithmetic, w) {}
};

struct no_root_error : error {
    explicit no_root_error(const std::string& w) : error(error_kind::no_root, w) {}
};

struct length_error : error {
    explicit length_error(const std::string& w) : error(error_kind::length, w) {}
};

struct not_found_error : error {
    explicit not_found_error(const std::string& w) : error(error_kind::not_found, w) {}
};

// Raised when the digits known about a value do not determine the answer.
// `index` identifies the failing expansion step, or -1 when not applicable;
// `required` is a suggested precision when one can be estimated (0 otherwise).
class precision_error : public error {
public:
    explicit precision_error(const std::string& w, long index = -1, long required = 0)
        : error(error_kind::precision, w), index_(index), required_(required)
    {
    }

    long index() const noexcept { return index_; }
    long required() const noexcept { return required_; }

private:
    long index_;
    long required_;
};

} // namespace padiccf

#endif
