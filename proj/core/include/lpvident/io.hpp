#pragma once

#include <filesystem>
#include <string>

#include "lpvident/estimator.hpp"
#include "lpvident/tuner.hpp"
#include "lpvident/types.hpp"

namespace lpvident {

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

/// Reads a dataset from CSV with header `k,u,y,p_1,...,p_np` and the row
/// index k counting from 1. The sampling period is not part of the format
/// and is supplied by the caller. Throws IoError with the path and line on
/// malformed content.
Dataset read_dataset_csv(const std::filesystem::path& path, double ts = 1.0);

/// Writes `d` in the same CSV format, full round-trip precision.
void write_dataset_csv(const std::filesystem::path& path, const Dataset& d);

/// Serializes a fitted model to JSON:
/// {"n_x", "sigma", "gamma", "alpha", "lambda",
///  "training": {"u", "y", "p", "Ts"}}.
/// Only RBF-kernel models can be saved; loading reconstructs a model that
/// simulates bit-identically. Numbers survive the round trip exactly.
void save_model(const std::filesystem::path& path, const TrainedModel& m);

TrainedModel load_model(const std::filesystem::path& path);

/// Writes a tuning sweep as CSV with columns `omega,J,weight`, one row per
/// curiosity, closed by the line `omega_star,<value>,`.
void write_tuning_report(const std::filesystem::path& path,
                         const TuningResult& result);

}  // namespace lpvident
