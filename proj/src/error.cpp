#include "cpsep/error.hpp"

namespace cpsep {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotSubgroup: return "NotSubgroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotAHom: return "NotAHom";
    case ErrorKind::InconsistentPartial: return "InconsistentPartial";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotPPower: return "NotPPower";
    case ErrorKind::PhiNotIso: return "PhiNotIso";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::NotCyclicallyReduced: return "NotCyclicallyReduced";
    case ErrorKind::NotCompatible: return "NotCompatible";
    case ErrorKind::NoRefinementFound: return "NoRefinementFound";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::GraphAxiom: return "GraphAxiom";
    case ErrorKind::InvalidTree: return "InvalidTree";
    case ErrorKind::WrongShape: return "WrongShape";
    case ErrorKind::ElementsConjugate: return "ElementsConjugate";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

std::string_view to_string(NotAGroupReason reason) {
  switch (reason) {
    case NotAGroupReason::None: return "none";
    case NotAGroupReason::NoIdentity: return "no-identity";
    case NotAGroupReason::NotALatinSquare: return "not-a-latin-square";
    case NotAGroupReason::NonAssociative: return "non-associative";
    case NotAGroupReason::NoInverse: return "no-inverse";
  }
  return "unknown";
}

}  // namespace cpsep
