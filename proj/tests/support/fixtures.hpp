#pragma once

#include "crossworld/admg.hpp"

namespace crossworld::testing {

// The three causal structures the d-separation examples revolve around:
// (a) the error term feeds both the covariate and the predictor;
// (b) same, plus latent confounding between treatment and error;
// (c) a pre-treatment covariate feeding treatment, covariate and predictor.

inline Admg graph_dp_entailed() {
    return Admg::parse("A -> X\nU -> X\nU -> Yhat\n");
}

inline Admg graph_confounded_error() {
    return Admg::parse("A -> X\nU -> X\nU -> Yhat\nA <-> U\n");
}

inline Admg graph_pretreatment() {
    return Admg::parse("A -> X\nXpre -> X\nXpre -> Yhat\nXpre -> A\n");
}

}  // namespace crossworld::testing
