#pragma once

// Umbrella header for the full pipeline: segment ingestion, feature
// extraction, normalization, PNN classification, and LOO-CV evaluation.

#include "eegpnn/errors.hpp"
#include "eegpnn/eval.hpp"
#include "eegpnn/features.hpp"
#include "eegpnn/fft.hpp"
#include "eegpnn/io.hpp"
#include "eegpnn/normalize.hpp"
#include "eegpnn/pnn.hpp"
#include "eegpnn/segment.hpp"
#include "eegpnn/signal_io.hpp"
#include "eegpnn/spectral.hpp"
#include "eegpnn/synth.hpp"
