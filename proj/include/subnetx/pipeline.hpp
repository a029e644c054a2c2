#pragma once

#include <string>
#include <vector>

#include "subnetx/entropy.hpp"
#include "subnetx/graph.hpp"
#include "subnetx/mask.hpp"
#include "subnetx/ml.hpp"
#include "subnetx/netio.hpp"

namespace subnetx {

// Subject-independent knobs of the feature pipeline.
struct PipelineConfig {
    double density = 0.2;
    ThresholdMode mode = ThresholdMode::raw;
    FeatureConfig features;
};

// Thresholds every subject once, then maps masks to feature matrices.
// Thresholding is mask-independent, so this is the natural cache boundary
// for the GA's inner loop.
class FeaturePipeline {
public:
    FeaturePipeline(const Dataset& ds, PipelineConfig cfg)
        : cfg_(std::move(cfg)), atlas_size_(ds.atlas_size), labels_(ds.labels()) {
        cfg_.features.validate();
        for (const auto& d : feature_layout(cfg_.features)) descriptors_.push_back(d.name());
        thresholded_.reserve(ds.subjects.size());
        for (const auto& s : ds.subjects) {
            thresholded_.push_back(threshold_to_density(s.matrix, cfg_.density, cfg_.mode));
        }
    }

    int atlas_size() const { return atlas_size_; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<std::string>& descriptors() const { return descriptors_; }
    const PipelineConfig& config() const { return cfg_; }
    const std::vector<BinaryGraph>& thresholded() const { return thresholded_; }

    FeatureMatrix features_for(const SubnetMask& mask) const {
        FeatureMatrix fm;
        fm.descriptors = descriptors_;
        fm.y = labels_;
        fm.X.resize(static_cast<Eigen::Index>(thresholded_.size()),
                    static_cast<Eigen::Index>(descriptors_.size()));
        for (std::size_t s = 0; s < thresholded_.size(); ++s) {
            const auto fv = feature_vector(induce(thresholded_[s], mask), cfg_.features);
            for (std::size_t j = 0; j < fv.slots.size(); ++j) {
                fm.X(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(j)) =
                    fv.slots[j].value;
            }
        }
        return fm;
    }

private:
    PipelineConfig cfg_;
    int atlas_size_;
    std::vector<int> labels_;
    std::vector<std::string> descriptors_;
    std::vector<BinaryGraph> thresholded_;
};

} // namespace subnetx
