int main() {
  int histogramSize = 200000000;
  int histogram[histogramSize];

  for (int j = 0; j < histogramSize; j++) {
    histogram[j] = 0;
  }
#pragma omp parallel for
#pragma drs // needed for analysis
  for (int i = 0; i < 100; i++) {
    if ((i * i * i) % 2 == 0) {
      histogram[(i * i * i)] = i;
    } else if (i % 3 == 0) {
      histogram[((i + 1) * (i + 1) * (i + 1) * (i + 1))] = 30 * i;
    } else if (i % 5 == 0) {
      histogram[((i - 1) * (i - 1) * (i - 1) * (i - 1))] = 40 * i;
    } else if (i > 1) {
      histogram[((i - 1) * (i - 1) * (i + 2) * (i + 3))] = 50 * i;
    }
  }
}
