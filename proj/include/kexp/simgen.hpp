#pragma once

#include <cstdint>

#include "kexp/types.hpp"

namespace kexp {

enum class SampleFamily { Gaussian, AsymNormal, Beta, SkewedT, FDist };

struct SampleSpec {
    SampleFamily family = SampleFamily::Gaussian;
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t k = 0;
    std::uint64_t seed = 0;
};

struct LabeledDataset {
    DataMatrix data;
    Membership labels;
    SampleSpec spec;
};

// Piecewise-linear map taking a standard-normal draw to an asymmetric
// normal variate whose tau-expectile sits at e_tau.
double asym_normal_transform(double z, double tau, double e_tau);

LabeledDataset gen_gaussian(const SampleSpec& spec);
LabeledDataset gen_asym_normal(const SampleSpec& spec);
LabeledDataset gen_beta(const SampleSpec& spec);
LabeledDataset gen_skewed_t(const SampleSpec& spec);
LabeledDataset gen_f(const SampleSpec& spec);

// Dispatch on spec.family.
LabeledDataset generate(const SampleSpec& spec);

SampleFamily parse_family(const std::string& name);
const char* family_name(SampleFamily family);

}  // namespace kexp
