#pragma once

#include <stdexcept>
#include <string>

namespace cambrian {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// bad user input: rejected before any computation starts
struct BadMatrix : Error { using Error::Error; };
struct BadInput : Error { using Error::Error; };
struct InfiniteType : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct SystemMismatch : Error { using Error::Error; };
struct CyclicOrientation : Error { using Error::Error; };
struct NotADiagonal : Error { using Error::Error; };
struct NotSortable : Error { using Error::Error; };
struct RankUnsupported : Error { using Error::Error; };

// invariant violations: these fire only if the mathematics (or the code) is wrong
struct NotALattice : Error { using Error::Error; };
struct NotACongruence : Error { using Error::Error; };
struct NotPolygonal : Error { using Error::Error; };
struct NonConvexUnion : Error { using Error::Error; };
struct MismatchWithClassFan : Error { using Error::Error; };

}  // namespace cambrian
