#pragma once

#include "onebit/channel.hpp"
#include "onebit/config.hpp"
#include "onebit/dsp/align.hpp"
#include "onebit/dsp/butterworth.hpp"
#include "onebit/dsp/filter.hpp"
#include "onebit/dsp/mixer.hpp"
#include "onebit/dsp/rate.hpp"
#include "onebit/dsp/rrc.hpp"
#include "onebit/dsp/signal.hpp"
#include "onebit/error.hpp"
#include "onebit/metrics/efficiency.hpp"
#include "onebit/metrics/mutual_information.hpp"
#include "onebit/metrics/psd.hpp"
#include "onebit/optimizer.hpp"
#include "onebit/pa_model.hpp"
#include "onebit/parallel.hpp"
#include "onebit/pipeline.hpp"
#include "onebit/quantizer.hpp"
#include "onebit/report.hpp"
