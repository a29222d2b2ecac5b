#pragma once

#include <stdexcept>
#include <string>

namespace zenosta {

struct ZenoError : std::runtime_error {
  ZenoError(std::string kind_, const std::string& msg)
      : std::runtime_error(kind_ + ": " + msg), kind(std::move(kind_)) {}
  std::string kind;
};

#define ZENOSTA_ERROR(Name)                                            \
  struct Name : ZenoError {                                            \
    explicit Name(const std::string& msg) : ZenoError(#Name, msg) {}   \
  }

ZENOSTA_ERROR(NonFiniteInput);
ZENOSTA_ERROR(DimMismatch);
ZENOSTA_ERROR(UnknownModel);
ZENOSTA_ERROR(MissingParam);
ZENOSTA_ERROR(GapCollapse);
ZENOSTA_ERROR(NotAProjector);
ZENOSTA_ERROR(FamilyInvalid);
ZENOSTA_ERROR(BoundaryStencil);
ZENOSTA_ERROR(UnitarityLoss);
ZENOSTA_ERROR(InitialStateOutsideSubspace);
ZENOSTA_ERROR(ZeroSurvival);
ZENOSTA_ERROR(InvalidDensityMatrix);
ZENOSTA_ERROR(PositivityLoss);
ZENOSTA_ERROR(StabilityGuard);
ZENOSTA_ERROR(GridMismatch);
ZENOSTA_ERROR(NormUnderflow);
ZENOSTA_ERROR(NonConvergence);
ZENOSTA_ERROR(ConfigInvalid);
ZENOSTA_ERROR(FitDegenerate);
ZENOSTA_ERROR(IoError);

#undef ZENOSTA_ERROR

}  // namespace zenosta
