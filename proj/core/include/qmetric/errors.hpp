#pragma once

#include <stdexcept>
#include <string>

namespace qmetric {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// matrixcore
class NonHermitianInput : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class InvalidDensityMatrix : public Error { public: using Error::Error; };

// models
class OutOfDomain : public Error { public: using Error::Error; };
class DegenerateModel : public Error { public: using Error::Error; };

// measurement
class DimensionMismatch : public Error { public: using Error::Error; };
class NotPure : public Error { public: using Error::Error; };
class NotReversible : public Error { public: using Error::Error; };

// fisher
class RankDeficient : public Error { public: using Error::Error; };
class SingularDistribution : public Error { public: using Error::Error; };
class UnknownMetric : public Error { public: using Error::Error; };

// divergence
class NotADistribution : public Error { public: using Error::Error; };
class SingularSigma : public Error { public: using Error::Error; };

// config / wire formats
class SchemaError : public Error { public: using Error::Error; };

}  // namespace qmetric
