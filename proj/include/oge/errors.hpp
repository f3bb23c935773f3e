#pragma once

#include <stdexcept>
#include <string>

namespace oge {

// Base class for all recoverable errors raised by the library.
// The CLI maps these to exit code 2 (bad input data); anything else
// escaping to main is treated as an internal error (exit code 3).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define OGE_ERROR_TYPE(NAME)                                          \
    class NAME : public Error {                                       \
    public:                                                           \
        explicit NAME(const std::string& m) : Error(m) {}             \
    }

// HDR I/O
OGE_ERROR_TYPE(FormatError);
OGE_ERROR_TYPE(UnsupportedOrientationError);
OGE_ERROR_TYPE(CorruptDataError);
OGE_ERROR_TYPE(InvalidDimensionError);

// geometry / photometry
OGE_ERROR_TYPE(GeometryError);
OGE_ERROR_TYPE(EmptyRegionError);

// glare analysis
OGE_ERROR_TYPE(DetectionError);
OGE_ERROR_TYPE(UnknownMetricError);

// feature assembly
OGE_ERROR_TYPE(ShapeError);
OGE_ERROR_TYPE(EmptyDatasetError);
OGE_ERROR_TYPE(MaskError);

// ML / evaluation
OGE_ERROR_TYPE(SplitError);
OGE_ERROR_TYPE(TrainingError);
OGE_ERROR_TYPE(ModelIoError);
OGE_ERROR_TYPE(RocError);
OGE_ERROR_TYPE(VariationUndefinedError);

// synthesis
OGE_ERROR_TYPE(GenerationError);

// cli / config
OGE_ERROR_TYPE(ConfigError);

#undef OGE_ERROR_TYPE

}
