#ifndef COBORD_ERRORS_HPP
#define COBORD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cobord
{

// Every error raised by the library derives from this, so callers
// (notably the CLI) can tell library failures from programming errors.
class cobord_error : public ::std::runtime_error
{
public:
    cobord_error(const char *kind, const ::std::string &msg) : ::std::runtime_error(msg), kind_(kind) {}

    // Stable machine-readable error name.
    const char *kind() const noexcept
    {
        return kind_;
    }

private:
    const char *kind_;
};

#define COBORD_DEFINE_ERROR(name)                                                                                      \
    class name : public cobord_error                                                                                   \
    {                                                                                                                  \
    public:                                                                                                            \
        explicit name(const ::std::string &msg) : cobord_error(#name, msg) {}                                          \
    }

// Neither coefficient ring contains the other.
COBORD_DEFINE_ERROR(incompatible_rings);
// A coefficient has a denominator the ring does not invert.
COBORD_DEFINE_ERROR(ring_violation);
COBORD_DEFINE_ERROR(unbound_variable);
COBORD_DEFINE_ERROR(missing_weight);
COBORD_DEFINE_ERROR(nonzero_constant_term);
COBORD_DEFINE_ERROR(missing_image);
COBORD_DEFINE_ERROR(degenerate_sample);
COBORD_DEFINE_ERROR(resample_limit_exceeded);
COBORD_DEFINE_ERROR(inconsistent_solve);
COBORD_DEFINE_ERROR(unknown_divisor);
COBORD_DEFINE_ERROR(index_out_of_range);
COBORD_DEFINE_ERROR(parse_error);

#undef COBORD_DEFINE_ERROR

} // namespace cobord

#endif
