#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fusionkit/safetensors.hpp"
#include "fusionkit/tensor.hpp"

namespace fusionkit {

// Glob patterns support a single metacharacter '*' (matches any run of
// characters, '.' included); everything else is literal.
bool glob_match(std::string_view pattern, std::string_view text);

struct KeyFilter {
    std::vector<std::string> include;
    std::vector<std::string> exclude;

    bool empty() const { return include.empty() && exclude.empty(); }
};

// Keeps keys matching any include pattern (all keys when none are given),
// then drops keys matching any exclude pattern. Preserves input order.
std::vector<std::string> apply_key_filter(const std::vector<std::string>& keys,
                                          const KeyFilter& filter);

struct ModelEntry {
    std::string name;
    CheckpointRef checkpoint;
};

// A named collection of checkpoints to fuse: an optional pretrained base,
// the fine-tuned models, and optional per-model statistics checkpoints
// (Fisher diagonals keyed like the model; input Gram matrices keyed by
// linear-layer weight name).
struct ModelPool {
    std::optional<CheckpointRef> base;
    std::vector<ModelEntry> models;
    std::map<std::string, CheckpointRef> stats;
    KeyFilter key_filter;

    const ModelEntry* find(const std::string& name) const;
};

struct ShapeConflict {
    std::string key;
    std::vector<size_t> expected;
    std::vector<size_t> found;
};

struct DtypeConflict {
    std::string key;
    DType expected;
    DType found;
};

struct ModelIssues {
    std::string model;
    std::vector<std::string> missing_keys;
    std::vector<std::string> extra_keys;
    std::vector<ShapeConflict> shape_conflicts;
    std::vector<DtypeConflict> dtype_conflicts;

    bool clean() const {
        return missing_keys.empty() && extra_keys.empty() && shape_conflicts.empty() &&
               dtype_conflicts.empty();
    }
};

struct ValidationReport {
    std::string reference;  // model the others were compared against
    std::vector<ModelIssues> per_model;

    bool mergeable() const;
    std::string to_string() const;
};

// Structural comparison of every model against the base (or the first
// model when no base is given), over the filtered key set. Reads headers
// only; no tensor payloads are touched.
ValidationReport validate(const ModelPool& pool);

// Difference between one fine-tuned model and the pool's base over the
// filtered keys.
struct TaskVector {
    std::string name;
    TensorMap delta;
};

TaskVector task_vector(const ModelPool& pool, const std::string& name);

// N x N matrix of pairwise task-vector cosine similarities, in pool
// model order. Every task vector must have nonzero norm.
std::vector<std::vector<double>> task_vector_cosine_matrix(const ModelPool& pool);

}  // namespace fusionkit
