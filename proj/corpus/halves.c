// Iterations 2k and 2k+1 write the same element.
int arr[50];

int main() {
#pragma omp parallel for
#pragma drs
  for (int i = 0; i < 100; i++) {
    arr[i / 2] = i;
  }
}
