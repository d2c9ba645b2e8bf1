// The guard keeps both iterations below 5, where 7*i1 == 2*i2 has no
// solution with i1 != i2.
int arr[1000];

int main() {
#pragma omp parallel for
#pragma drs
  for (int i = 0; i < 10; i++) {
    if (i < 5) {
      arr[i % 6 + 6 * i] = arr[2 * i] + 1;
    }
  }
}
