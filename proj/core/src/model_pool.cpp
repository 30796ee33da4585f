#include "fusionkit/model_pool.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fusionkit/errors.hpp"
#include "fusionkit/tensor_ops.hpp"

namespace fusionkit {

bool glob_match(std::string_view pattern, std::string_view text) {
    size_t p = 0, t = 0;
    size_t star = std::string_view::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

static void check_patterns(const std::vector<std::string>& patterns) {
    for (const auto& pat : patterns) {
        if (pat.empty()) fail(errc::invalid_pattern, "empty glob pattern");
    }
}

std::vector<std::string> apply_key_filter(const std::vector<std::string>& keys,
                                          const KeyFilter& filter) {
    check_patterns(filter.include);
    check_patterns(filter.exclude);
    std::vector<std::string> out;
    out.reserve(keys.size());
    for (const auto& key : keys) {
        bool keep = filter.include.empty();
        for (const auto& pat : filter.include) {
            if (glob_match(pat, key)) {
                keep = true;
                break;
            }
        }
        for (const auto& pat : filter.exclude) {
            if (keep && glob_match(pat, key)) keep = false;
        }
        if (keep) out.push_back(key);
    }
    return out;
}

const ModelEntry* ModelPool::find(const std::string& name) const {
    for (const auto& entry : models) {
        if (entry.name == name) return &entry;
    }
    return nullptr;
}

bool ValidationReport::mergeable() const {
    return std::all_of(per_model.begin(), per_model.end(),
                       [](const ModelIssues& mi) { return mi.clean(); });
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    os << "validation against '" << reference << "':";
    bool any = false;
    for (const auto& mi : per_model) {
        if (mi.clean()) continue;
        any = true;
        os << "\n  model '" << mi.model << "':";
        for (const auto& k : mi.missing_keys) os << "\n    missing key '" << k << "'";
        for (const auto& k : mi.extra_keys) os << "\n    extra key '" << k << "'";
        for (const auto& c : mi.shape_conflicts) {
            os << "\n    shape conflict on '" << c.key << "': " << shape_to_string(c.expected)
               << " vs " << shape_to_string(c.found);
        }
        for (const auto& c : mi.dtype_conflicts) {
            os << "\n    dtype conflict on '" << c.key << "': " << dtype_name(c.expected) << " vs "
               << dtype_name(c.found);
        }
    }
    if (!any) os << " all models mergeable";
    return os.str();
}

static void check_model_names(const ModelPool& pool) {
    std::set<std::string> seen;
    for (const auto& entry : pool.models) {
        if (entry.name.empty()) fail(errc::invalid_parameter, "model with empty name in pool");
        if (!seen.insert(entry.name).second) {
            fail(errc::invalid_parameter, "duplicate model name '" + entry.name + "' in pool");
        }
    }
}

ValidationReport validate(const ModelPool& pool) {
    check_model_names(pool);
    ValidationReport report;
    if (pool.models.empty() && !pool.base) return report;

    const CheckpointRef& ref_cp = pool.base ? *pool.base : pool.models.front().checkpoint;
    report.reference = pool.base ? "<base>" : pool.models.front().name;

    const LazyCheckpoint ref = open_lazy(ref_cp);
    const std::vector<std::string> ref_keys = apply_key_filter(ref.keys(), pool.key_filter);
    const std::set<std::string> ref_key_set(ref_keys.begin(), ref_keys.end());

    for (size_t i = 0; i < pool.models.size(); ++i) {
        if (!pool.base && i == 0) continue;  // the reference itself
        const ModelEntry& entry = pool.models[i];
        ModelIssues issues;
        issues.model = entry.name;

        const LazyCheckpoint cp = open_lazy(entry.checkpoint);
        const std::vector<std::string> keys = apply_key_filter(cp.keys(), pool.key_filter);
        const std::set<std::string> key_set(keys.begin(), keys.end());

        for (const auto& k : ref_keys) {
            if (!key_set.count(k)) issues.missing_keys.push_back(k);
        }
        for (const auto& k : keys) {
            if (!ref_key_set.count(k)) issues.extra_keys.push_back(k);
        }
        for (const auto& k : ref_keys) {
            if (!key_set.count(k)) continue;
            const TensorIndexEntry& re = ref.index().at(k);
            const TensorIndexEntry& me = cp.index().at(k);
            if (re.shape != me.shape) {
                issues.shape_conflicts.push_back({k, re.shape, me.shape});
            } else if (re.dtype != me.dtype) {
                issues.dtype_conflicts.push_back({k, re.dtype, me.dtype});
            }
        }
        report.per_model.push_back(std::move(issues));
    }
    return report;
}

static void require_mergeable(const ModelPool& pool) {
    const ValidationReport report = validate(pool);
    if (!report.mergeable()) fail(errc::pool_not_mergeable, report.to_string());
}

TaskVector task_vector(const ModelPool& pool, const std::string& name) {
    if (!pool.base) fail(errc::no_base_model, "task vectors require a pretrained base model");
    const ModelEntry* entry = pool.find(name);
    if (entry == nullptr) fail(errc::unknown_model, "no model named '" + name + "' in pool");
    require_mergeable(pool);

    const LazyCheckpoint base = open_lazy(*pool.base);
    const LazyCheckpoint model = open_lazy(entry->checkpoint);
    const std::vector<std::string> keys = apply_key_filter(base.keys(), pool.key_filter);

    TensorMap base_map, model_map;
    for (const auto& k : keys) {
        base_map.emplace_hint(base_map.end(), k, base.load_tensor(k));
        model_map.emplace_hint(model_map.end(), k, model.load_tensor(k));
    }
    return TaskVector{name, map_sub(model_map, base_map)};
}

std::vector<std::vector<double>> task_vector_cosine_matrix(const ModelPool& pool) {
    if (!pool.base) fail(errc::no_base_model, "task vectors require a pretrained base model");
    if (pool.models.empty()) fail(errc::empty_pool, "cosine matrix of an empty pool");

    std::vector<TaskVector> vectors;
    vectors.reserve(pool.models.size());
    for (const auto& entry : pool.models) vectors.push_back(task_vector(pool, entry.name));

    for (const auto& tv : vectors) {
        if (flat_norm(tv.delta) == 0.0) {
            fail(errc::zero_norm, "task vector of model '" + tv.name + "' has zero norm");
        }
    }

    const size_t n = vectors.size();
    std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i; j < n; ++j) {
            const double c = cosine_similarity(vectors[i].delta, vectors[j].delta);
            matrix[i][j] = c;
            matrix[j][i] = c;
        }
    }
    return matrix;
}

}  // namespace fusionkit
