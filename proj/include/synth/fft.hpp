#pragma once

#include <complex>
#include <cstddef>

namespace synth {

using cplx = std::complex<double>;

// Batched unitary DFT along the row axis: data holds num_rows rows of
// row_len complex values; every column is transformed independently.
// "Centered" places the zero-frequency row at index floor(T/2), i.e. row p
// holds bin m = p - floor(T/2). num_rows must be a power of two.
void fft_rows_centered_forward(cplx* data, std::size_t num_rows, std::size_t row_len);
void fft_rows_centered_inverse(cplx* data, std::size_t num_rows, std::size_t row_len);

}
