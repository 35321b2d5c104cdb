#pragma once

#include <stdexcept>
#include <string>

namespace rb {

/// Machine-readable failure categories surfaced by the library and the CLI.
enum class ErrorCode {
    AllMissing,
    DegenerateSeries,
    SeriesTooShort,
    LengthMismatch,
    Empty,
    EmptyTrain,
    SingularDesign,
    NonConvergence,
    DimensionMismatch,
    EmptyCatalog,
    InsufficientHistory,
    EmptyTrainingSet,
    UndifferentiableAtPrototype,
    MissingCase,
    IncompleteTable,
    MissingProfiles,
    FileNotFound,
    ColumnMissing,
    ParseError,
    DuplicateTimestamp,
    UnknownFixture,
    IncompleteResults,
    JobFailure,
    InvalidArgument,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::AllMissing: return "AllMissing";
    case ErrorCode::DegenerateSeries: return "DegenerateSeries";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::EmptyTrain: return "EmptyTrain";
    case ErrorCode::SingularDesign: return "SingularDesign";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyCatalog: return "EmptyCatalog";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::UndifferentiableAtPrototype: return "UndifferentiableAtPrototype";
    case ErrorCode::MissingCase: return "MissingCase";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::MissingProfiles: return "MissingProfiles";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ColumnMissing: return "ColumnMissing";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateTimestamp: return "DuplicateTimestamp";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::IncompleteResults: return "IncompleteResults";
    case ErrorCode::JobFailure: return "JobFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Exception carrying an ErrorCode; what() is "Code: detail".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
    throw Error(code, detail);
}

} // namespace rb
