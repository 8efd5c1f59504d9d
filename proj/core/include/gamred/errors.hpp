#pragma once

#include <stdexcept>
#include <string>

namespace gamred {

// Base class for every error this library throws on bad input or bad state.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance file could not be parsed. line is 1-based, 0 if not line-specific.
struct ParseError : Error {
    ParseError(int line_no, const std::string& what_arg)
        : Error("parse error at line " + std::to_string(line_no) + ": " + what_arg),
          line(line_no) {}
    int line;
};

// Structurally invalid instance (empty source/sink set, overlap, ...).
struct InvalidInstance : Error {
    using Error::Error;
};

// A source has no directed path to any sink, so no finite k can route it.
struct UncolorableSource : Error {
    UncolorableSource(int v, const std::string& what_arg) : Error(what_arg), source(v) {}
    int source;
};

// Routing certificate was requested for a dependent source set.
struct NotIndependent : Error {
    using Error::Error;
};

// Brute-force oracle refused an instance above its size limit.
struct TooLarge : Error {
    using Error::Error;
};

// A color list is smaller than the bipartite degree bound requires.
struct ListTooSmall : Error {
    ListTooSmall(int elem, const std::string& what_arg) : Error(what_arg), element(elem) {}
    int element;
};

// Partition matroid universe differs from the instance's real sources.
struct UniverseMismatch : Error {
    using Error::Error;
};

// Random instance generation exhausted its retry budget or got bad params.
struct GenerationFailed : Error {
    using Error::Error;
};

// A "can't happen" invariant failed; signals a bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace gamred
