/*
 * Copyright 2026 The RerF Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rerf/dataset.hpp"

#include <cmath>

#include "rerf/errors.hpp"

namespace rerf {

void SparseParityConfig::validate() const {
  if (n < 1) throw InvalidArgument("sparse parity needs n >= 1");
  if (relevant < 1 || relevant > p) {
    throw InvalidArgument("sparse parity needs 1 <= p* <= p (p*=" +
                          std::to_string(relevant) +
                          ", p=" + std::to_string(p) + ")");
  }
  if (!(noise_sd > 0.0)) throw InvalidArgument("sparse parity needs noise_sd > 0");
}

void TrunkConfig::validate() const {
  if (n < 2 || n % 2 != 0) {
    throw InvalidArgument("trunk needs an even n >= 2, got " + std::to_string(n));
  }
  if (p < 1) throw InvalidArgument("trunk needs p >= 1");
}

std::string Dataset::class_name(Label id) const {
  const auto i = static_cast<std::size_t>(id);
  if (id >= 0 && i < class_names.size()) return class_names[i];
  return std::to_string(id);
}

void Dataset::validate(bool allow_empty) const {
  if (!allow_empty && features.rows() < 1) {
    throw InvalidArgument("dataset needs n >= 1");
  }
  if (features.cols() < 1) throw InvalidArgument("dataset needs p >= 1");
  if (labels.size() != size()) {
    throw InvalidArgument("dataset has " + std::to_string(size()) +
                          " rows but " + std::to_string(labels.size()) +
                          " labels");
  }
  if (class_count < 1 && size() > 0) {
    throw InvalidArgument("dataset needs class_count >= 1");
  }
  for (const auto y : labels) {
    if (y < 0 || static_cast<std::size_t>(y) >= class_count) {
      throw InvalidArgument("label " + std::to_string(y) + " outside [0, " +
                            std::to_string(class_count) + ")");
    }
  }
  if (!class_names.empty() && class_names.size() != class_count) {
    throw InvalidArgument("class_names must have class_count entries");
  }
  if (!features.allFinite()) {
    throw InvalidArgument("dataset features must be finite");
  }
}

Dataset subset(const Dataset& data, const std::vector<std::size_t>& rows) {
  Dataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), data.features.cols());
  out.labels.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.features.row(static_cast<Eigen::Index>(k)) =
        data.features.row(static_cast<Eigen::Index>(rows[k]));
    out.labels.push_back(data.labels[rows[k]]);
  }
  out.class_count = data.class_count;
  out.class_names = data.class_names;
  out.source = data.source;
  return out;
}

}  // namespace rerf
