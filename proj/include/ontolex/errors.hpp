#pragma once
// Exception hierarchy. Validation problems are reported as Findings;
// exceptions are reserved for violated preconditions and malformed input.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ontolex {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownIdError : public Error { public: using Error::Error; };
class DuplicateIdError : public Error { public: using Error::Error; };
class DanglingReferenceError : public Error { public: using Error::Error; };
class NotFoundError : public Error { public: using Error::Error; };

// taxonomy
class CycleError : public Error { public: using Error::Error; };
class MultipleParentError : public Error { public: using Error::Error; };
class CyclicInputError : public Error { public: using Error::Error; };

// formal semantics
class UncoveredConceptError : public Error { public: using Error::Error; };

// gloss lint
class UnknownParentError : public Error { public: using Error::Error; };

// lexicon store
class DuplicateLexiconError : public Error { public: using Error::Error; };

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " at line " + std::to_string(line) + ", column " +
                std::to_string(column)),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// mapping eval
class RangeError : public Error { public: using Error::Error; };
class UnknownRelationError : public Error { public: using Error::Error; };
class DuplicateMappingError : public Error { public: using Error::Error; };
class TargetMismatchError : public Error { public: using Error::Error; };
class UnresolvedTargetError : public Error { public: using Error::Error; };

}  // namespace ontolex
