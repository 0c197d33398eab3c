#pragma once

#include <string>

#include "robusthd/pp.hpp"
#include "robusthd/sample_matrix.hpp"

namespace robusthd {

// Headerless numeric CSV, rows = observations; `skip_header` drops one
// leading line. Non-numeric or non-finite fields raise DataError.
SampleMatrix read_csv_matrix(const std::string& path, bool skip_header = false);

// Row-major triplet dump with header "j,k,value"; indices are 1-based.
void write_covariance_csv(const std::string& path, const Eigen::MatrixXd& matrix);

// Header "t,cdf_reference,cdf_empirical".
void write_pp_csv(const std::string& path, const PPCurve& curve);

}  // namespace robusthd
