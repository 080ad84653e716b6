#pragma once

#include "footclust/error.hpp"
#include "footclust/rng.hpp"
#include "footclust/stats.hpp"
#include "footclust/parallel.hpp"
#include "footclust/csv.hpp"
#include "footclust/positions.hpp"
#include "footclust/features.hpp"
#include "footclust/feature_io.hpp"
#include "footclust/dissimilarity_matrix.hpp"
#include "footclust/dissimilarity.hpp"
#include "footclust/clustering.hpp"
#include "footclust/pam.hpp"
#include "footclust/hierarchical.hpp"
#include "footclust/spectral.hpp"
#include "footclust/random_clustering.hpp"
#include "footclust/methods.hpp"
#include "footclust/indexes.hpp"
#include "footclust/bootstab.hpp"
#include "footclust/panel.hpp"
#include "footclust/calibration.hpp"
#include "footclust/survey.hpp"
#include "footclust/mds.hpp"
#include "footclust/results_io.hpp"
#include "footclust/pipeline.hpp"
#include "footclust/version.hpp"
