// The guard depends on a parameter; some values of n make it true.
void run(int n) {
  int arr[200];
#pragma omp parallel for
#pragma drs
  for (int i = 0; i < 100; i++) {
    if (n > 150) {
      arr[0] = i;
    }
  }
}
