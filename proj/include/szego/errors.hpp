// Error types shared across the library. Every failure mode named in a
// module contract maps to one of these so callers (and the CLI) can report
// the failing condition by name.

#ifndef SZEGO_ERRORS_HPP
#define SZEGO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace szego {

struct Error : std::runtime_error {
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), error_name(std::move(name)) {}
    std::string error_name;
};

#define SZEGO_DEFINE_ERROR(Name)                                        \
    struct Name : Error {                                               \
        explicit Name(const std::string& what) : Error(#Name, what) {}  \
    }

SZEGO_DEFINE_ERROR(DimensionMismatch);
SZEGO_DEFINE_ERROR(TailNotResolved);
SZEGO_DEFINE_ERROR(RankMismatch);
SZEGO_DEFINE_ERROR(PoleInsideDisc);
SZEGO_DEFINE_ERROR(InvalidSymbol);
SZEGO_DEFINE_ERROR(ZeroSymbol);
SZEGO_DEFINE_ERROR(AmbiguousGrouping);
SZEGO_DEFINE_ERROR(DegenerateSpectrum);
SZEGO_DEFINE_ERROR(DegenerateSigmas);
SZEGO_DEFINE_ERROR(InconsistentInputs);
SZEGO_DEFINE_ERROR(ResonantX);
SZEGO_DEFINE_ERROR(NotOnResonantLeaf);
SZEGO_DEFINE_ERROR(CrossingDetected);
SZEGO_DEFINE_ERROR(StepSizeUnderflow);
SZEGO_DEFINE_ERROR(FitUnreliable);
SZEGO_DEFINE_ERROR(NumericalSingularity);
SZEGO_DEFINE_ERROR(UnsupportedMultiplicity);
SZEGO_DEFINE_ERROR(EvalFailure);
SZEGO_DEFINE_ERROR(ConfigError);

#undef SZEGO_DEFINE_ERROR

} // namespace szego

#endif
