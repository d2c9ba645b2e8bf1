// Each iteration owns one row.
int m[16][16];

int main() {
#pragma omp parallel for
#pragma drs
  for (int i = 0; i < 16; i++) {
    for (int k = 0; k < 16; k++) {
      m[i][k] += k;
    }
  }
}
