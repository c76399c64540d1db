#include "isoeq/errors.hpp"

namespace isoeq {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::TooLarge: return "TooLarge";
        case Errc::NoIrreducibleFound: return "NoIrreducibleFound";
        case Errc::ZeroInverse: return "ZeroInverse";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NotContained: return "NotContained";
        case Errc::BadCodimension: return "BadCodimension";
        case Errc::BadSpec: return "BadSpec";
        case Errc::AmbientTooSmall: return "AmbientTooSmall";
        case Errc::NotASolution: return "NotASolution";
        case Errc::NotMinimalLength: return "NotMinimalLength";
        case Errc::ClassificationFailed: return "ClassificationFailed";
        case Errc::NotACovering: return "NotACovering";
        case Errc::StructureViolation: return "StructureViolation";
        case Errc::Precondition: return "Precondition";
        case Errc::Malformed: return "Malformed";
        case Errc::NotCanonical: return "NotCanonical";
    }
    return "Unknown";
}

int errc_exit_code(Errc code) noexcept {
    switch (code) {
        case Errc::Malformed:
        case Errc::NotCanonical:
            return 2;
        case Errc::TooLarge:
            return 4;
        case Errc::NoIrreducibleFound:
        case Errc::ClassificationFailed:
        case Errc::StructureViolation:
            return 5;
        default:
            return 3;
    }
}

}  // namespace isoeq
