// Iteration i reads what iteration i+1 writes.
int arr[101];

int main() {
#pragma omp parallel for
#pragma drs
  for (int i = 0; i < 100; i++) {
    arr[i] = arr[i + 1] + 1;
  }
}
