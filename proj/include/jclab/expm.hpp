// expm.hpp — dense matrix exponential by Padé-13 scaling and squaring.
//
// Verification oracle only: evolves states as exp(-iHt)ψ without touching
// the eigenbasis machinery, so the two routes can be compared.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace jclab {

inline Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a_in) {
    using Mat = Eigen::MatrixXcd;
    const Eigen::Index n = a_in.rows();
    // 1-norm based scaling (Higham 2005, degree-13 approximant)
    const double theta13 = 5.371920351148152;
    double norm1 = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) norm1 = std::max(norm1, a_in.col(j).cwiseAbs().sum());
    int squarings = 0;
    if (norm1 > theta13)
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    Mat a = a_in / std::pow(2.0, squarings);

    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const Mat ident = Mat::Identity(n, n);
    const Mat a2 = a * a;
    const Mat a4 = a2 * a2;
    const Mat a6 = a4 * a2;
    Mat u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                 b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
    Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
            b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
    Mat r = (v - u).partialPivLu().solve(v + u);
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

// exp(-iHt)ψ for a dense Hamiltonian.
inline Eigen::VectorXcd expm_evolve(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi,
                                    double t) {
    return matrix_exponential(std::complex<double>(0.0, -t) * h) * psi;
}

} // namespace jclab
